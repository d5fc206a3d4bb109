"""Exact vector configurations and the catalog of arrangement realizations."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from .exterior import bits, indices_of
from .latin import (
    LatinSquare,
    addition_table,
    build_matroid,
    build_matroid_mols,
    circuit_family,
    cyclic_hypercube,
    degenerate_with_blocks,
)
from .matroid import CircuitFamily, Matroid, close_family, matroid_from_top_circuits, parallel_extension, uniform
from .oscohomology import OSAlgebra, Weight, cohomology
from .scalar import Cyclotomic, field_of, scalar_from_json, scalar_to_json, sparse_rank


class Loop(ValueError):
    pass


@dataclass(frozen=True)
class Configuration:
    """n linear forms of length r over Q (conductor None) or Q(zeta_conductor)."""

    vectors: tuple
    conductor: int | None = None

    def __init__(self, vectors: Sequence[Sequence], conductor: int | None = None):
        vecs = tuple(tuple(v) for v in vectors)
        if not vecs:
            raise ValueError("empty configuration")
        r = len(vecs[0])
        if any(len(v) != r for v in vecs):
            raise ValueError("vectors have different lengths")
        found = field_of(x for v in vecs for x in v)
        if conductor is None:
            conductor = found
        elif found is not None and found != conductor:
            raise ValueError("incompatible fields")
        if conductor is not None:
            vecs = tuple(tuple(x if isinstance(x, Cyclotomic) else Cyclotomic(conductor, [x]) for x in v)
                         for v in vecs)
        object.__setattr__(self, "vectors", vecs)
        object.__setattr__(self, "conductor", conductor)

    @property
    def n(self) -> int:
        return len(self.vectors)

    @property
    def r(self) -> int:
        return len(self.vectors[0])

    def rank_of(self, subset: Sequence[int]) -> int:
        """Rank of the forms with 1-based indices in subset."""
        return sparse_rank([{j: x for j, x in enumerate(self.vectors[i - 1]) if x} for i in subset])

    def validate(self) -> None:
        for i, v in enumerate(self.vectors, start=1):
            if not any(v):
                raise Loop(f"loop: vector {i} is zero")
        if self.rank_of(range(1, self.n + 1)) != self.r:
            raise ValueError("configuration is not of full rank")

    def over(self, conductor: int) -> "Configuration":
        """The same forms viewed over Q(zeta_conductor)."""
        if self.conductor is not None and self.conductor != conductor:
            raise ValueError("incompatible fields")
        return Configuration(self.vectors, conductor)

    def to_dict(self) -> dict:
        fld = "Q" if self.conductor is None else {"cyclotomic": self.conductor}
        return {"field": fld, "rank": self.r,
                "vectors": [[scalar_to_json(x) for x in v] for v in self.vectors]}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "Configuration":
        fld = d.get("field", "Q")
        conductor = None if fld == "Q" else int(fld["cyclotomic"])
        vecs = [[scalar_from_json(x, conductor) for x in v] for v in d["vectors"]]
        c = cls(vecs, conductor)
        if "rank" in d and int(d["rank"]) != c.r:
            raise ValueError("declared rank does not match vector length")
        return c


def underlying_matroid(c: Configuration) -> Matroid:
    """Minimal linearly dependent subsets, searched by size up to r+1."""
    c.validate()
    found: list[int] = []
    for k in range(2, c.r + 2):
        for sub in combinations(range(c.n), k):
            m = 0
            for b in sub:
                m |= 1 << b
            if any(f & m == f for f in found):
                continue
            if c.rank_of([b + 1 for b in sub]) < k:
                found.append(m)
    return Matroid(c.n, found, masks=True)


# ---------------------------------------------------------------------------
# catalog

@dataclass
class CatalogEntry:
    name: str
    configuration: Configuration
    expected: Callable[[], Matroid]
    block_size: int
    block_weight: tuple
    degree: int
    expected_dim: int | None = None     # exact dim H^degree when known
    min_dim: int = 1
    extra: list[tuple[str, Callable[[Matroid], bool]]] = field(default_factory=list)
    experimental: bool = False
    note: str = ""

    @property
    def weight(self) -> Weight:
        return Weight.block(self.block_size, self.block_weight)


@dataclass
class VerificationReport:
    name: str
    claims: list[tuple[str, bool, str]] = field(default_factory=list)
    dims_A: list[int] | None = None

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.claims)

    def add(self, claim: str, ok: bool, detail: str = ""):
        self.claims.append((claim, bool(ok), detail))

    def to_dict(self) -> dict:
        return {"entry": self.name, "passed": self.passed, "dims_A": self.dims_A,
                "claims": [{"claim": c, "passed": ok, "detail": d} for c, ok, d in self.claims]}


def verify(entry: CatalogEntry) -> VerificationReport:
    rep = VerificationReport(entry.name)
    try:
        M = underlying_matroid(entry.configuration)
    except ValueError as exc:
        rep.add("configuration is a loopless full-rank arrangement", False, str(exc))
        return rep
    expected = entry.expected()
    iso = M.isomorphic(expected)
    rep.add("underlying matroid is isomorphic to the expected matroid", iso is not None,
            f"{M!r} vs {expected!r}")
    rep.add("underlying matroid satisfies the circuit axioms", M.check_circuit_axioms())
    for label, check in entry.extra:
        rep.add(label, check(M))
    res = cohomology(OSAlgebra(M), entry.weight)
    rep.dims_A = res.dims_A
    got = res.dims_A[entry.degree]
    if entry.expected_dim is not None:
        rep.add(f"dim H^{entry.degree} = {entry.expected_dim}", got == entry.expected_dim, f"got {got}")
    else:
        rep.add(f"dim H^{entry.degree} >= {entry.min_dim}", got >= entry.min_dim, f"got {got}")
    rep.add("H^k = 0 below the witnessed degree", all(d == 0 for d in res.dims_A[:entry.degree]),
            str(res.dims_A))
    return rep


def _w(n: int) -> Callable[[int], Cyclotomic]:
    return lambda k: Cyclotomic.zeta(n, k)


NAMED_SQUARES = {
    # the two main classes of order 4 used for the degenerations
    "K1_order4": LatinSquare([[1, 2, 3, 4], [4, 1, 2, 3], [3, 4, 1, 2], [2, 3, 4, 1]]),
    "K2_order4": LatinSquare([[1, 2, 3, 4], [2, 1, 4, 3], [3, 4, 1, 2], [4, 3, 2, 1]]),
    # the orthogonal pair behind the Hessian configuration
    "K1_order3": LatinSquare([[1, 2, 3], [3, 1, 2], [2, 3, 1]]),
    "K2_order3": LatinSquare([[1, 2, 3], [2, 3, 1], [3, 1, 2]]),
    "K_order2": LatinSquare([[1, 2], [2, 1]]),
}


def near_pencil() -> CatalogEntry:
    conf = Configuration([[1, 0], [0, 1], [1, 1]])
    one = LatinSquare([[1]])
    return CatalogEntry("near-pencil", conf, lambda: build_matroid_mols([one]), 1, (1, 1, -2), 1, expected_dim=1)


def ceva() -> CatalogEntry:
    # x_i +- x_j, ordered so that the triple points are exactly C[K]
    conf = Configuration(CEVA_VECTORS)
    K = NAMED_SQUARES["K_order2"]
    fam = circuit_family(K)
    return CatalogEntry(
        "ceva", conf, lambda: build_matroid(K), 2, (1, 1, -2), 1, expected_dim=1,
        extra=[("3-circuits are exactly C[K]", lambda M: M.circuits_of_size(3) == list(fam.members))],
    )


def pappus() -> CatalogEntry:
    conf = Configuration(PAPPUS_VECTORS)
    K = NAMED_SQUARES["K1_order3"]
    fam = circuit_family(K)
    return CatalogEntry(
        "pappus", conf, lambda: build_matroid(K), 3, (1, 1, -2), 1, expected_dim=1,
        extra=[("3-circuits are exactly C[K]", lambda M: M.circuits_of_size(3) == list(fam.members))],
    )


def hessian() -> CatalogEntry:
    w = _w(3)
    one = 1
    forms = [
        [1, 0, 0], [0, 1, 0], [0, 0, 1],
        [1, 1, 1], [1, w(2), w(1)], [1, w(1), w(2)],
        [1, w(1), w(1)], [1, one, w(2)], [1, w(2), one],
        [1, w(2), w(2)], [1, w(1), one], [1, one, w(1)],
    ]
    conf = Configuration(forms, 3)
    K1, K2 = NAMED_SQUARES["K1_order3"], NAMED_SQUARES["K2_order3"]

    def sub_matroids(M: Matroid) -> bool:
        first = M.restriction(list(range(1, 10)))
        second = M.restriction([1, 2, 3, 4, 5, 6, 10, 11, 12])
        return first == build_matroid(K1) and second == build_matroid(K2)

    return CatalogEntry(
        "hessian", conf, lambda: build_matroid_mols([K1, K2]), 3, (1, 2, 3, -6), 1, expected_dim=2,
        extra=[("matroid equals M[K1,K2] with the given labels",
                lambda M: M == build_matroid_mols([K1, K2])),
               ("H1..H9 realize M[K1] and H1..H6,H10..H12 realize M[K2]", sub_matroids)],
    )


def monomial(m: int) -> CatalogEntry:
    """A_{m,m,3}: the forms x_i - zeta^k x_j, blocks (1,2), (2,3), (1,3)."""
    if m < 2:
        raise ValueError("monomial arrangement needs m >= 2")
    z = _w(m)
    forms = []
    for i, j in ((0, 1), (1, 2), (0, 2)):
        for k in range(1, m + 1):
            v = [0, 0, 0]
            v[i] = 1
            v[j] = -z(k)
            forms.append(v)
    conf = Configuration(forms, m)
    K = addition_table(m)

    def expected():
        return degenerate_with_blocks([K], [uniform(2, m)] * 3)

    return CatalogEntry(
        f"monomial({m})", conf, expected, m, (1, 1, -2), 1, expected_dim=1,
        extra=[("matroid equals M[K; U_{2,m}, U_{2,m}, U_{2,m}] with the given labels",
                lambda M: M == expected())],
    )


def higher_a(b=2, c=3) -> CatalogEntry:
    b, c = Fraction(b), Fraction(c)
    if len({Fraction(0), Fraction(1), b, c, b * c}) != 5:
        raise ValueError("0, 1, b, c, bc must be distinct")
    forms = [
        [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1],
        [1, 1, 1, 1], [1, b * c, b, c], [1, c, 1, c], [1, b, b, 1],
    ]
    K = cyclic_hypercube(3, 2)
    return CatalogEntry(
        f"higher-A({b},{c})", Configuration(forms), lambda: build_matroid(K), 2, (1, 1, 1, -3), 2,
        extra=[("matroid equals M[K] with the given labels", lambda M: M == build_matroid(K))],
    )


HIGHER_B_EXTRA = [(1, 2, 3, 4), (1, 2, 7, 8), (3, 4, 5, 6), (5, 6, 7, 8)]


def higher_b_matroid() -> Matroid:
    K = cyclic_hypercube(3, 2)
    fam = circuit_family(K).union(HIGHER_B_EXTRA)
    return matroid_from_top_circuits(fam, 3, 8)


def higher_b() -> CatalogEntry:
    forms = [
        [1, -1, 0, 0], [1, 1, 0, 0], [0, 1, -1, 0], [0, 1, 1, 0],
        [0, 0, 1, -1], [0, 0, 1, 1], [-1, 0, 0, 1], [1, 0, 0, 1],
    ]
    K = cyclic_hypercube(3, 2)
    want = sorted(set(circuit_family(K).members) | set(HIGHER_B_EXTRA))
    return CatalogEntry(
        "higher-B", Configuration(forms), higher_b_matroid, 2, (1, 1, 1, -3), 2,
        extra=[("no 3-circuits", lambda M: not M.circuits_of_size(3)),
               ("4-circuits are exactly C[K] and the four extra quadruples",
                lambda M: M.circuits_of_size(4) == want)],
    )


B3_CLASSES = [[1, 2], [3], [4], [5, 6], [7], [8], [9], [10], [11, 12]]


def b3_simple_target() -> Matroid:
    """Simple matroid of the degeneration: C[K2] pushed through the parallel
    identification and closed under C_3."""
    cls_of = {e: k + 1 for k, c in enumerate(B3_CLASSES) for e in c}
    fam = circuit_family(NAMED_SQUARES["K2_order4"])
    image = {tuple(sorted(cls_of[e] for e in S)) for S in fam.members}
    return matroid_from_top_circuits(close_family(CircuitFamily(9, 3, image), 2), 2, 9)


def b3_degeneration_matroid() -> Matroid:
    return parallel_extension(b3_simple_target(), B3_CLASSES)


def b3_degeneration() -> CatalogEntry:
    """Degeneration of M[K2] (order 4) with {1,2}, {5,6}, {11,12} parallel; simple part B_3."""
    K2 = NAMED_SQUARES["K2_order4"]
    fam = circuit_family(K2)

    def degenerates(M: Matroid) -> bool:
        return set(fam.members) <= set(M.circuits_of_size(3))

    def simple_is_b3(M: Matroid) -> bool:
        return M.simplification()[0].isomorphic(underlying_matroid(Configuration(B3_FORMS))) is not None

    return CatalogEntry(
        "b3-degeneration", Configuration(B3_VECTORS), b3_degeneration_matroid, 4, (1, 1, -2), 1,
        extra=[("parallel classes are {1,2}, {5,6}, {11,12}",
                lambda M: M.circuits_of_size(2) == [(1, 2), (5, 6), (11, 12)]),
               ("3-circuits contain C[K2]", degenerates),
               ("simplification is the B3 arrangement matroid", simple_is_b3)],
        experimental=True,
        note="labels derived by isomorphism search; not one of the named catalog entries",
    )


# coordinates fixed by solving the incidence constraints (see scripts/derive_coordinates.py)
CEVA_VECTORS = [[1, -1, 0], [1, 1, 0], [0, 1, -1], [0, 1, 1], [1, 0, -1], [1, 0, 1]]
_F = Fraction
PAPPUS_VECTORS = [
    [0, 0, 1], [1, 4, 1], [1, _F(14, 13), _F(11, 39)],
    [1, 0, 1], [1, _F(4, 3), _F(5, 9)], [1, _F(7, 4), _F(1, 4)],
    [1, 0, _F(1, 3)], [1, _F(4, 3), _F(1, 9)], [1, _F(7, 4), 1],
]
# B3: x, y, z, x +- y, x +- z, y +- z
B3_FORMS = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 0], [1, 1, 0], [1, 0, -1], [1, 0, 1], [0, 1, -1], [0, 1, 1]]
B3_VECTORS = [
    [1, 0, 0], [1, 0, 0], [0, 1, -1], [0, 1, 1], [0, 0, 1], [0, 0, 1],
    [1, -1, 0], [1, 1, 0], [1, 0, -1], [1, 0, 1], [0, 1, 0], [0, 1, 0],
]


CATALOG: dict[str, Callable[..., CatalogEntry]] = {
    "near-pencil": near_pencil,
    "ceva": ceva,
    "pappus": pappus,
    "hessian": hessian,
    "monomial": monomial,
    "higher-A": higher_a,
    "higher-B": higher_b,
    "b3-degeneration": b3_degeneration,
}


def catalog(name: str) -> CatalogEntry:
    """Look up an entry; accepts 'monomial(4)' and 'higher-A(b,c)' forms."""
    base, _, args = name.partition("(")
    base = base.strip()
    if base not in CATALOG:
        raise KeyError(f"unknown catalog entry {name!r}")
    if args:
        vals = [a.strip() for a in args.rstrip(")").split(",") if a.strip()]
        if base == "monomial":
            return monomial(int(vals[0]))
        if base == "higher-A":
            return higher_a(*(Fraction(v) for v in vals))
        raise KeyError(f"entry {base!r} takes no parameters")
    if base == "monomial":
        return monomial(3)
    return CATALOG[base]()


def catalog_names() -> list[str]:
    return ["near-pencil", "ceva", "pappus", "hessian", "monomial(3)", "monomial(4)",
            "higher-A(2,3)", "higher-B", "b3-degeneration"]
