"""Orlik-Solomon algebras in nbc coordinates and Aomoto complex cohomology."""
from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from .exterior import ExteriorElement, bits, block_sums, boundary, boundary_mask, mask_of, merge_sign, wedge_all
from .matroid import Matroid
from .scalar import format_rational, parse_rational, sparse_rank


@dataclass(frozen=True)
class Weight:
    values: tuple

    def __init__(self, values: Sequence):
        object.__setattr__(self, "values", tuple(parse_rational(v) if isinstance(v, str) else Fraction(v)
                                                 for v in values))

    @classmethod
    def block(cls, m: int, block_values: Sequence) -> "Weight":
        """Constant on consecutive blocks of size m."""
        return cls([v for v in block_values for _ in range(m)])

    @classmethod
    def parse(cls, text: str) -> "Weight":
        return cls([parse_rational(t) for t in text.split(",") if t.strip()])

    def __len__(self):
        return len(self.values)

    def is_zero(self) -> bool:
        return not any(self.values)

    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def sum_zero(self) -> bool:
        return self.total() == 0

    def one_form(self) -> ExteriorElement:
        return ExteriorElement.linear(self.values)

    def scaled(self, c) -> "Weight":
        return Weight([v * c for v in self.values])

    def to_json(self) -> list[str]:
        return [format_rational(v) for v in self.values]


@dataclass
class CohomologyReport:
    dims_A: list[int]
    dims_dA: list[int] | None
    weight: Weight
    betti: list[int] = field(default_factory=list)
    trivial_weight: bool = False

    def euler_A(self) -> int:
        return sum((-1) ** p * d for p, d in enumerate(self.dims_A))

    def splitting_holds(self) -> bool:
        if self.dims_dA is None:
            return True
        dA = list(self.dims_dA) + [0]
        for p in range(-1, len(self.dims_A) - 1):
            lower = dA[p] if p >= 0 else 0
            if self.dims_A[p + 1] != dA[p + 1] + lower:
                return False
        return True

    def to_dict(self) -> dict:
        return {"dims_A": list(self.dims_A),
                "dims_dA": None if self.dims_dA is None else list(self.dims_dA),
                "betti": list(self.betti),
                "weight": self.weight.to_json()}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


class OSAlgebra:
    """A(M) = E / <dM> with the nbc monomials as basis.

    Rewriting of non-nbc monomials is memoised; the cache is guarded by a
    lock so concurrent readers never see a half-built entry.
    """

    def __init__(self, matroid: Matroid, order: Sequence[int] | None = None):
        self.matroid = matroid
        self.n = matroid.n
        self.rank = matroid.rank
        self.order = tuple(order) if order is not None else tuple(range(1, self.n + 1))
        self._pos = matroid._order_rank(self.order)
        self._broken = matroid.broken_circuit_map(self.order)
        self._broken_sizes = sorted({b.bit_count() for b in self._broken})
        self.basis: list[list[int]] = [matroid.nbc_masks(p, self.order) for p in range(self.rank + 1)]
        self.index: list[dict[int, int]] = [{m: k for k, m in enumerate(b)} for b in self.basis]
        self._cache: dict[int, dict[int, int]] = {}
        self._lock = threading.Lock()

    def dim(self, p: int) -> int:
        return len(self.basis[p]) if 0 <= p <= self.rank else 0

    def dims(self) -> list[int]:
        return [self.dim(p) for p in range(self.rank + 1)]

    # straightening -----------------------------------------------------------
    def _find_broken(self, S: int) -> tuple[int, int, int] | None:
        size = S.bit_count()
        el = bits(S)
        for k in self._broken_sizes:
            if k > size:
                break
            for sub in combinations(el, k):
                b = 0
                for x in sub:
                    b |= 1 << x
                hit = self._broken.get(b)
                if hit is not None:
                    return b, hit[0], hit[1]
        return None

    def reduce_mask(self, S: int) -> dict[int, int]:
        """nbc expansion of the monomial e_S (S sorted increasingly)."""
        hit = self._cache.get(S)
        if hit is not None:
            return hit
        out = self._reduce_uncached(S)
        with self._lock:
            self._cache.setdefault(S, out)
        return out

    def _reduce_uncached(self, S: int) -> dict[int, int]:
        if S.bit_count() > self.rank or not self.matroid.is_independent(S):
            return {}
        found = self._find_broken(S)
        if found is None:
            return {S: 1}
        B, C, least = found
        R = S ^ B
        # e_S = sign(B,R) e_B ^ e_R and, from d(e_C) = 0,
        # e_B = -(-1)^k0 sum_{k != k0} (-1)^k e_{C - c_k}
        cb = bits(C)
        k0 = cb.index(least)
        base = merge_sign(B, R) * (1 if k0 & 1 else -1)
        out: dict[int, int] = {}
        for k, b in enumerate(cb):
            if k == k0:
                continue
            face = C ^ (1 << b)
            s = merge_sign(face, R)
            if not s:
                continue
            coeff = base * s * (-1 if k & 1 else 1)
            for t, c in self.reduce_mask(face | R).items():
                v = out.get(t, 0) + coeff * c
                if v:
                    out[t] = v
                else:
                    del out[t]
        return out

    def reduce(self, x: ExteriorElement) -> ExteriorElement:
        if x.n != self.n:
            raise ValueError("element lives on a different generator set")
        out: dict[int, object] = {}
        for S, c in x.mask_terms().items():
            for t, v in self.reduce_mask(S).items():
                w = out.get(t, 0) + c * v
                if w:
                    out[t] = w
                else:
                    del out[t]
        return ExteriorElement(self.n, out)

    # matrices (rows indexed by source basis) ----------------------------------
    def coordinates(self, x: ExteriorElement, p: int) -> dict[int, object]:
        idx = self.index[p]
        return {idx[t]: c for t, c in self.reduce(x).degree_part(p).mask_terms().items()}

    def multiplication_rows(self, weight: Weight, p: int) -> list[dict[int, object]]:
        """Matrix of e_lambda ^ : A^p -> A^{p+1}, one sparse row per basis element."""
        if p < 0 or p >= self.rank:
            return []
        idx = self.index[p + 1]
        lam = [(1 << i, v) for i, v in enumerate(weight.values) if v]
        rows = []
        for S in self.basis[p]:
            row: dict[int, object] = {}
            for g, v in lam:
                s = merge_sign(g, S)
                if not s:
                    continue
                for t, c in self.reduce_mask(g | S).items():
                    col = idx[t]
                    w = row.get(col, 0) + s * c * v
                    if w:
                        row[col] = w
                    else:
                        del row[col]
            rows.append(row)
        return rows

    def boundary_rows(self, p: int) -> list[dict[int, int]]:
        """Matrix of d_M : A^p -> A^{p-1}; faces of nbc sets are nbc."""
        if p < 1 or p > self.rank:
            return []
        idx = self.index[p - 1]
        rows = []
        for S in self.basis[p]:
            rows.append({idx[f]: s for s, f in boundary_mask(S)})
        return rows


def _compose(first: list[dict], second: list[dict]) -> list[dict]:
    """Rows of (first then second): row_i = sum_j first[i][j] * second[j]."""
    out = []
    for r in first:
        acc: dict[int, object] = {}
        for j, c in r.items():
            for k, v in second[j].items():
                w = acc.get(k, 0) + c * v
                if w:
                    acc[k] = w
                else:
                    del acc[k]
        out.append(acc)
    return out


def cohomology(A: OSAlgebra, weight: Weight | Sequence) -> CohomologyReport:
    """dim H^p(A, e_lambda) for all p, plus dim H^p(dA, e_lambda) when sum = 0."""
    if not isinstance(weight, Weight):
        weight = Weight(weight)
    if len(weight) != A.n:
        raise ValueError(f"weight has length {len(weight)}, expected {A.n}")
    r = A.rank
    betti = A.dims()
    D = [A.multiplication_rows(weight, p) for p in range(r)]
    rk = [sparse_rank(d) for d in D] + [0]

    def rank_at(p):
        return rk[p] if 0 <= p < r else 0

    dims_A = [betti[p] - rank_at(p) - rank_at(p - 1) for p in range(r + 1)]
    dims_dA = None
    if weight.sum_zero():
        # dA^q = im(d : A^{q+1} -> A^q); e_lambda restricted to it has rank rank(d_{q+1} then D_q)
        Bd = {q: A.boundary_rows(q + 1) for q in range(r)}
        dim_dA = [sparse_rank(Bd[q]) for q in range(r)]
        rk_res = [sparse_rank(_compose(Bd[q], D[q])) for q in range(r)]

        def res(q):
            return rk_res[q] if 0 <= q < r else 0

        dims_dA = [dim_dA[q] - res(q) - res(q - 1) for q in range(r)]
    rep = CohomologyReport(dims_A, dims_dA, weight, betti, trivial_weight=weight.is_zero())
    if not rep.splitting_holds():
        raise AssertionError(f"splitting identity failed: {dims_A} vs {dims_dA}")
    return rep


# ---------------------------------------------------------------------------
# independent oracle

def quotient_dims(M: Matroid) -> list[int]:
    """dim A^p as C(n,p) minus the rank of the degree-p part of <dM>, by raw
    elimination in the exterior algebra (no nbc theory involved)."""
    n = M.n
    gens = []
    for c in M.circuit_masks:
        gens.append((c.bit_count() - 1, boundary_mask(c)))
    dims = []
    for p in range(n + 1):
        rows = []
        for deg, terms in gens:
            if deg > p:
                continue
            for T in combinations(range(n), p - deg):
                t = 0
                for b in T:
                    t |= 1 << b
                row: dict[int, int] = {}
                for s, face in terms:
                    # e_T ^ d(e_C)
                    sg = merge_sign(t, face)
                    if sg:
                        key = t | face
                        v = row.get(key, 0) + sg * s
                        if v:
                            row[key] = v
                        else:
                            del row[key]
                if row:
                    rows.append(row)
        d = comb(n, p) - sparse_rank(rows)
        dims.append(d)
        if d == 0 and p > M.rank:
            break
    while dims and dims[-1] == 0:
        dims.pop()
    return dims


# ---------------------------------------------------------------------------
# non-vanishing witnesses

def nonvanishing_witness(K, weight: Weight | Sequence, A: OSAlgebra | None = None) -> ExteriorElement:
    """b = d(prod_{i != j} a_i) for the first block j with nonzero weight.

    Checks that b is nonzero in A(M[K]), that e_lambda ^ b vanishes there, and
    that b is not e_lambda ^ eta for any eta; returns b in nbc coordinates.
    """
    from .latin import build_matroid

    if not isinstance(weight, Weight):
        weight = Weight(weight)
    m, ell = K.order, K.dim
    n = (ell + 1) * m
    if A is None:
        A = OSAlgebra(build_matroid(K))
    if weight.is_zero():
        raise ValueError("witness undefined for the zero weight")
    if len(weight) != n:
        raise ValueError(f"weight has length {len(weight)}, expected {n}")
    blocks = [weight.values[s * m] for s in range(ell + 1)]
    if Weight.block(m, blocks) != weight:
        raise ValueError("weight is not constant on blocks")
    if sum(blocks) != 0:
        raise ValueError("block values must sum to zero")
    j = next(s for s, v in enumerate(blocks) if v)
    a = block_sums(n, m)
    b = boundary(wedge_all(n, [a[s] for s in range(ell + 1) if s != j]))
    rb = A.reduce(b)
    if not rb:
        raise AssertionError("witness vanishes in A")
    if A.reduce(weight.one_form() ^ b):
        raise AssertionError("e_lambda ^ b is not zero in A")
    p = ell - 1
    D = A.multiplication_rows(weight, p - 1)
    target = A.coordinates(b, p)
    if sparse_rank(D + [target]) == sparse_rank(D):
        raise AssertionError("witness is a coboundary")
    return rb


def h1_dimension_mols(Ks, block_values: Sequence) -> int:
    from .latin import build_matroid_mols, mutually_orthogonal

    if not mutually_orthogonal(Ks):
        raise ValueError("squares are not mutually orthogonal")
    m = Ks[0].order
    if len(block_values) != len(Ks) + 2:
        raise ValueError(f"need {len(Ks) + 2} block values")
    M = build_matroid_mols(Ks)
    rep = cohomology(OSAlgebra(M), Weight.block(m, block_values))
    return rep.dims_A[1]
