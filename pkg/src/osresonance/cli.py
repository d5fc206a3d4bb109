"""Command-line front end.

Every subcommand writes JSON to stdout (or --output).  Exit status is 0 on
success, 1 when a verification claim fails and 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .latin import (
    InvalidLatin,
    LatinHypercube,
    LatinSquare,
    build_matroid,
    build_matroid_mols,
    degenerate,
    main_class_representatives,
    subsquare,
)
from .matroid import Matroid, NotACircuitFamily
from .oscohomology import OSAlgebra, Weight, cohomology
from .realization import catalog, catalog_names, verify

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def worker_count() -> int:
    raw = os.environ.get("OS_RESONANCE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise InputError(f"OS_RESONANCE_THREADS must be an integer, got {raw!r}")


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}")


def _load_square(path: str) -> LatinHypercube:
    return LatinHypercube.from_dict(_load_json(path))


def _parse_subsquare(text: str) -> tuple[list[int], list[int]]:
    """'1,3;2,4' means rows {1,3} and columns {2,4}."""
    try:
        rows, cols = text.split(";")
        return [int(x) for x in rows.split(",")], [int(x) for x in cols.split(",")]
    except ValueError:
        raise InputError(f"subsquare must look like '1,3;2,4', got {text!r}")


def parse_weight(args, n: int | None = None) -> Weight:
    if args.weight is not None:
        w = Weight.parse(args.weight)
    else:
        if args.order is None:
            raise InputError("--block-weight needs --order")
        w = Weight.block(args.order, Weight.parse(args.block_weight).values)
    if not len(w):
        raise InputError("empty weight")
    if n is not None and len(w) != n:
        raise InputError(f"weight has {len(w)} entries but the matroid has {n} elements")
    return w


# ---------------------------------------------------------------------------
# subcommands

def cmd_latin_classify(args) -> tuple[int, dict, str]:
    reps = main_class_representatives(args.order)
    out = {"order": args.order, "count": len(reps), "representatives": [K.to_dict() for K in reps]}
    lines = [f"order {args.order}: {len(reps)} main classes"]
    for K in reps:
        lines += [" ".join(map(str, r)) for r in K.rows] + [""]
    return EXIT_OK, out, "\n".join(lines)


def cmd_matroid_build(args) -> tuple[int, dict, str]:
    K = _load_square(args.square)
    extra = [_load_square(f) for f in args.mols]
    if K.dim != 2:
        if extra or args.subsquare or args.blocks:
            raise InputError("--mols, --subsquare and --blocks need a Latin square (dim 2)")
        M = build_matroid(K)
    else:
        Ks = [K] + extra
        if any(not isinstance(L, LatinSquare) or L.order != K.order for L in extra):
            raise InputError("--mols squares must be Latin squares of the same order")
        blocks = None
        if args.blocks:
            raw = _load_json(args.blocks)
            if not isinstance(raw, list):
                raise InputError("--blocks file must hold a list of matroids or nulls")
            blocks = [None if b is None else Matroid.from_dict(b) for b in raw]
        subs = []
        if args.subsquare:
            rows, cols = _parse_subsquare(args.subsquare)
            subs.append(subsquare(K, rows, cols))
        if blocks is not None or subs:
            M = degenerate(Ks, blocks, subs)
        elif len(Ks) > 1:
            M = build_matroid_mols(Ks)
        else:
            M = build_matroid(K)
    out = M.to_dict()
    sizes = {}
    for c in M.circuits:
        sizes[len(c)] = sizes.get(len(c), 0) + 1
    text = f"n={M.n} rank={M.rank} circuits by size: " + ", ".join(f"{k}:{v}" for k, v in sorted(sizes.items()))
    return EXIT_OK, out, text


def cmd_cohomology(args) -> tuple[int, dict, str]:
    M = Matroid.from_dict(_load_json(args.matroid))
    w = parse_weight(args, M.n)
    rep = cohomology(OSAlgebra(M), w)
    out = rep.to_dict()
    rows = [f"{'p':>3} {'dim A^p':>8} {'H^p(A)':>7} {'H^p(dA)':>8}"]
    for p, (b, h) in enumerate(zip(rep.betti, rep.dims_A)):
        dA = rep.dims_dA[p] if rep.dims_dA is not None and p < len(rep.dims_dA) else "-"
        rows.append(f"{p:>3} {b:>8} {h:>7} {dA:>8}")
    return EXIT_OK, out, "\n".join(rows)


def _verify_one(name: str) -> dict:
    return verify(catalog(name)).to_dict()


def cmd_verify(args) -> tuple[int, dict, str]:
    names = catalog_names() if args.all else args.entry
    if not names:
        raise InputError("give --entry NAME or --all")
    for n in names:
        catalog(n)  # fail fast on unknown names
    workers = min(worker_count(), len(names))
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            reports = list(pool.map(_verify_one, names))
    else:
        reports = [_verify_one(n) for n in names]
    ok = all(r["passed"] for r in reports)
    lines = []
    for r in reports:
        lines.append(f"{r['entry']}: {'pass' if r['passed'] else 'FAIL'}  dims H = {r['dims_A']}")
        for c in r["claims"]:
            mark = "ok  " if c["passed"] else "FAIL"
            lines.append(f"  [{mark}] {c['claim']}" + (f" ({c['detail']})" if c["detail"] and not c["passed"] else ""))
    out = reports[0] if len(reports) == 1 else {"passed": ok, "reports": reports}
    return (EXIT_OK if ok else EXIT_FAILED), out, "\n".join(lines)


def cmd_catalog_list(args) -> tuple[int, dict, str]:
    rows = []
    for name in catalog_names():
        e = catalog(name)
        rows.append({"name": name, "n": e.configuration.n, "rank": e.configuration.r,
                     "field": "Q" if e.configuration.conductor is None else f"Q(zeta_{e.configuration.conductor})",
                     "degree": e.degree, "experimental": e.experimental})
    text = "\n".join(f"{r['name']:<16} n={r['n']:<3} rank={r['rank']} {r['field']:<12} H^{r['degree']}"
                     + ("  (experimental)" if r["experimental"] else "") for r in rows)
    return EXIT_OK, {"entries": rows}, text


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="osresonance", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write JSON here instead of stdout")
    common.add_argument("--pretty", action="store_true", help="print a human-readable table after the JSON")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("latin-classify", parents=[common], help="count main classes of Latin squares")
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=cmd_latin_classify)

    p = sub.add_parser("matroid-build", parents=[common], help="matroid from a square or hypercube")
    p.add_argument("--square", required=True, help="square/hypercube JSON file")
    p.add_argument("--mols", nargs="*", default=[], help="further mutually orthogonal squares")
    p.add_argument("--subsquare", help="rows;cols of a subsquare, e.g. '1,3;2,4'")
    p.add_argument("--blocks", help="JSON list of block matroids (or null), one per block")
    p.set_defaults(func=cmd_matroid_build)

    p = sub.add_parser("cohomology", parents=[common], help="Aomoto complex cohomology of A(M)")
    p.add_argument("--matroid", required=True, help="matroid JSON file")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--weight", help="comma-separated rationals, one per element")
    g.add_argument("--block-weight", help="comma-separated block values, each repeated --order times")
    p.add_argument("--order", type=int, help="block size for --block-weight")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("verify", parents=[common], help="verify catalog realizations")
    p.add_argument("--entry", action="append", default=[], help="catalog entry (repeatable)")
    p.add_argument("--all", action="store_true", help="verify every catalog entry")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog-list", parents=[common], help="list catalog entries")
    p.set_defaults(func=cmd_catalog_list)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        status, payload, text = args.func(args)
    except (InputError, InvalidLatin, NotACircuitFamily, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    body = json.dumps(payload)
    if args.output:
        Path(args.output).write_text(body + "\n")
    else:
        print(body)
    if args.pretty:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
