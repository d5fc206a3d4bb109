"""Latin squares and hypercubes, their circuit families and matroids.

Indices and symbols are 1-based throughout.  A hypercube of dimension l and
order m stores its m**l cells row-major: the cell (i_1, ..., i_l) sits at
offset sum (i_k - 1) m**(l-k).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Iterable, Sequence

from .matroid import CircuitFamily, Matroid, matroid_from_top_circuits, uniform


class InvalidLatin(ValueError):
    pass


@dataclass(frozen=True)
class LatinHypercube:
    dim: int
    order: int
    cells: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(int(c) for c in self.cells))
        self.validate()

    def validate(self) -> None:
        m, ell = self.order, self.dim
        if ell < 1 or m < 1:
            raise InvalidLatin("dimension and order must be positive")
        if len(self.cells) != m ** ell:
            raise InvalidLatin(f"expected {m ** ell} cells, got {len(self.cells)}")
        full = set(range(1, m + 1))
        for axis in range(ell):
            stride = m ** (ell - 1 - axis)
            for idx in product(range(m), repeat=ell - 1):
                base = 0
                it = iter(idx)
                for a in range(ell):
                    if a != axis:
                        base += next(it) * m ** (ell - 1 - a)
                line = {self.cells[base + t * stride] for t in range(m)}
                if line != full:
                    raise InvalidLatin(f"line along axis {axis + 1} through {idx} is not a permutation")

    def __getitem__(self, idx: Sequence[int]) -> int:
        off = 0
        for i in idx:
            off = off * self.order + (i - 1)
        return self.cells[off]

    def items(self):
        """Yield ((i_1, ..., i_l), k) over all cells."""
        for k, idx in enumerate(product(range(1, self.order + 1), repeat=self.dim)):
            yield idx, self.cells[k]

    def to_dict(self) -> dict:
        return {"dim": self.dim, "order": self.order, "cells": list(self.cells)}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "LatinHypercube":
        for key in ("dim", "order", "cells"):
            if key not in d:
                raise InvalidLatin(f"hypercube JSON missing {key!r}")
        if int(d["dim"]) == 2:
            return LatinSquare.from_flat(int(d["order"]), d["cells"])
        return cls(int(d["dim"]), int(d["order"]), tuple(d["cells"]))

    @classmethod
    def from_json(cls, text: str) -> "LatinHypercube":
        return cls.from_dict(json.loads(text))


class LatinSquare(LatinHypercube):
    """An m x m Latin square; rows, columns and symbols carry label sets."""

    def __init__(self, rows: Sequence[Sequence[int]], labels: Sequence[Sequence[int]] | None = None):
        m = len(rows)
        cells = tuple(int(v) for r in rows for v in r)
        if any(len(r) != m for r in rows):
            raise InvalidLatin("square must be m x m")
        super().__init__(2, m, cells)
        if labels is None:
            labels = (tuple(range(1, m + 1)), tuple(range(m + 1, 2 * m + 1)), tuple(range(2 * m + 1, 3 * m + 1)))
        object.__setattr__(self, "labels", tuple(tuple(x) for x in labels))

    @classmethod
    def from_flat(cls, m: int, cells: Sequence[int]) -> "LatinSquare":
        cells = list(cells)
        if len(cells) != m * m:
            raise InvalidLatin(f"expected {m * m} cells")
        return cls([cells[i * m:(i + 1) * m] for i in range(m)])

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        m = self.order
        return tuple(self.cells[i * m:(i + 1) * m] for i in range(m))

    def triples(self) -> set[tuple[int, int, int]]:
        """T(K) in local coordinates: (row, column, symbol)."""
        return {(i, j, k) for (i, j), k in self.items()}

    def labelled_triples(self) -> set[frozenset[int]]:
        r, c, s = self.labels
        return {frozenset((r[i - 1], c[j - 1], s[k - 1])) for i, j, k in self.triples()}

    def __repr__(self):
        return f"LatinSquare({[list(r) for r in self.rows]})"

    def __eq__(self, other):
        return isinstance(other, LatinHypercube) and self.dim == other.dim and self.cells == other.cells

    def __hash__(self):
        return hash(self.cells)


# ---------------------------------------------------------------------------
# standard squares

def cyclic_hypercube(ell: int, m: int) -> LatinHypercube:
    """k(i_1, ..., i_l) = 1 + (i_1 + ... + i_l - l) mod m."""
    cells = [1 + (sum(idx) % m) for idx in product(range(m), repeat=ell)]
    if ell == 2:
        return LatinSquare.from_flat(m, cells)
    return LatinHypercube(ell, m, tuple(cells))


def addition_table(m: int) -> LatinSquare:
    """Z_m addition with symbol r in 1..m congruent to row + column."""
    return LatinSquare([[(i + j - 1) % m + 1 for j in range(1, m + 1)] for i in range(1, m + 1)])


def circulant_square(m: int) -> LatinSquare:
    """Rows shift right: k_{i,j} = 1 + (j - i) mod m."""
    return LatinSquare([[(j - i) % m + 1 for j in range(m)] for i in range(m)])


# ---------------------------------------------------------------------------
# circuit families and matroids

def circuit_family(K: LatinHypercube) -> CircuitFamily:
    """C[K] = {(i_1, m + i_2, ..., (l-1)m + i_l, lm + k(i_1..i_l))}."""
    K.validate()
    m, ell = K.order, K.dim
    members = []
    for idx, k in K.items():
        members.append(tuple(a * m + i for a, i in enumerate(idx)) + (ell * m + k,))
    return CircuitFamily((ell + 1) * m, ell + 1, members)


def build_matroid(K: LatinHypercube) -> Matroid:
    """M[K]: the l-generic rank-(l+1) matroid with (l+1)-circuits C[K]."""
    if K.order < 2 or K.dim < 2:
        raise ValueError("M[K] needs order >= 2 and dimension >= 2")
    C = circuit_family(K)
    return matroid_from_top_circuits(C, K.dim, C.n)


def are_orthogonal(K1: LatinSquare, K2: LatinSquare) -> bool:
    if K1.order != K2.order:
        raise ValueError("squares have different orders")
    pairs = set(zip(K1.cells, K2.cells))
    return len(pairs) == K1.order ** 2


def mutually_orthogonal(Ks: Sequence[LatinSquare]) -> bool:
    return all(are_orthogonal(a, b) for a, b in combinations(Ks, 2))


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def mols_prime(p: int, s: int) -> list[LatinSquare]:
    """K_t with k_{i,j} = i + t j (mod p), t = 1..s, as squares on [p]."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not 1 <= s <= p - 1:
        raise ValueError(f"need 1 <= s <= {p - 1}")
    return [LatinSquare([[(i + t * j) % p + 1 for j in range(p)] for i in range(p)]) for t in range(1, s + 1)]


def mols_family(Ks: Sequence[LatinSquare]) -> CircuitFamily:
    """Triples of the shifted squares plus every 3-subset of each X_{i,j}."""
    if not Ks:
        raise ValueError("need at least one square")
    m = Ks[0].order
    if any(K.order != m for K in Ks):
        raise ValueError("squares have different orders")
    if not mutually_orthogonal(Ks):
        raise ValueError("squares are not mutually orthogonal")
    s = len(Ks)
    n = (s + 2) * m
    members = set()
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            X = [i, m + j] + [(p + 1) * m + K[(i, j)] for p, K in enumerate(Ks, start=1)]
            members.update(combinations(sorted(X), 3))
    return CircuitFamily(n, 3, members)


def build_matroid_mols(Ks: Sequence[LatinSquare]) -> Matroid:
    C = mols_family(Ks)
    if Ks[0].order == 1:
        return uniform(2, C.n)
    return matroid_from_top_circuits(C, 2, C.n)


# ---------------------------------------------------------------------------
# subsquares and degenerations

@dataclass(frozen=True)
class Subsquare:
    row_indices: tuple[int, ...]
    col_indices: tuple[int, ...]
    symbols: tuple[int, ...]

    def block(self, K: LatinSquare) -> list[list[int]]:
        return [[K[(i, j)] for j in self.col_indices] for i in self.row_indices]

    def X(self, m: int) -> tuple[int, ...]:
        """X(J): row labels, shifted column labels and shifted symbol labels."""
        return tuple(sorted(
            list(self.row_indices) + [m + j for j in self.col_indices] + [2 * m + k for k in self.symbols]
        ))


def subsquare(K: LatinSquare, rows: Iterable[int], cols: Iterable[int]) -> Subsquare:
    rows, cols = tuple(sorted(rows)), tuple(sorted(cols))
    syms = {K[(i, j)] for i in rows for j in cols}
    if len(rows) != len(cols) or len(syms) != len(rows):
        raise InvalidLatin(f"rows {rows} x columns {cols} is not a subsquare")
    return Subsquare(rows, cols, tuple(sorted(syms)))


def find_subsquares(K: LatinSquare, s: int) -> list[Subsquare]:
    m = K.order
    if s < 1 or 2 * s > m:
        return []
    out = []
    for rows in combinations(range(1, m + 1), s):
        first = {j: K[(rows[0], j)] for j in range(1, m + 1)}
        for cols in combinations(range(1, m + 1), s):
            syms = {first[j] for j in cols}
            if all(K[(i, j)] in syms for i in rows[1:] for j in cols):
                out.append(Subsquare(rows, cols, tuple(sorted(syms))))
    return out


def degenerate(Ks: Sequence[LatinSquare], blocks: Sequence[Matroid | None] | None = None,
               subsquares: Sequence[Subsquare] = ()) -> Matroid:
    """Rank-3 degeneration: add block 3-circuits and X(J) triples, re-check C_3."""
    C = mols_family(Ks)
    m = Ks[0].order
    extra: set[tuple[int, ...]] = set()
    if blocks is not None:
        if len(blocks) != len(Ks) + 2:
            raise ValueError(f"need {len(Ks) + 2} block matroids")
        for b, M in enumerate(blocks):
            if M is None:
                continue
            if M.n != m:
                raise ValueError(f"block matroid {b + 1} must live on {m} elements")
            if not M.is_generic(2):
                raise ValueError(f"block matroid {b + 1} is not simple")
            for c in M.circuits_of_size(3):
                extra.add(tuple(b * m + e for e in c))
    for J in subsquares:
        if len(Ks) != 1:
            raise ValueError("subsquare degeneration needs a single square")
        extra.update(combinations(J.X(m), 3))
    return matroid_from_top_circuits(C.union(extra), 2, C.n)


def degenerate_with_blocks(Ks: Sequence[LatinSquare], Ms: Sequence[Matroid | None]) -> Matroid:
    return degenerate(Ks, blocks=Ms)


def degenerate_with_subsquare(K: LatinSquare, J: Subsquare) -> Matroid:
    return degenerate([K], subsquares=[J])


# ---------------------------------------------------------------------------
# conjugates, isotopy, main classes

def conjugate(K: LatinSquare, sigma: Sequence[int]) -> LatinSquare:
    """sigma-conjugate: rows indexed by role sigma[0], columns by sigma[1],
    symbols by sigma[2], with the same triple system."""
    sigma = tuple(sigma)
    if sorted(sigma) != [1, 2, 3]:
        raise ValueError("sigma must permute (1, 2, 3)")
    m = K.order
    cells = [[0] * m for _ in range(m)]
    for t in K.triples():
        cells[t[sigma[0] - 1] - 1][t[sigma[1] - 1] - 1] = t[sigma[2] - 1]
    labels = tuple(K.labels[r - 1] for r in sigma)
    return LatinSquare(cells, labels)


def _as_rows0(K: LatinSquare) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(v - 1 for v in r) for r in K.rows)


def _conjugates0(L: tuple[tuple[int, ...], ...]) -> list[tuple[tuple[int, ...], ...]]:
    m = len(L)
    trip = [(i, j, L[i][j]) for i in range(m) for j in range(m)]
    out = []
    for sigma in permutations(range(3)):
        cells = [[0] * m for _ in range(m)]
        for t in trip:
            cells[t[sigma[0]]][t[sigma[1]]] = t[sigma[2]]
        out.append(tuple(tuple(r) for r in cells))
    return out


def _reduced_forms0(L: tuple[tuple[int, ...], ...]) -> set[tuple[int, ...]]:
    """Every reduced square isotopic to L, flattened (0-based symbols)."""
    m = len(L)
    out = set()
    for r in range(m):
        where = [0] * m
        for c, v in enumerate(L[r]):
            where[v] = c
        for gamma in permutations(range(m)):
            ginv = [0] * m
            for s, g in enumerate(gamma):
                ginv[g] = s
            cols = [where[ginv[j]] for j in range(m)]
            new = [None] * m
            c0 = cols[0]
            for row in L:
                new[gamma[row[c0]]] = tuple(gamma[row[c]] for c in cols)
            out.add(tuple(v for row in new for v in row))
    return out


def _unflatten(flat: Sequence[int], m: int) -> LatinSquare:
    return LatinSquare([[flat[i * m + j] + 1 for j in range(m)] for i in range(m)])


def isotopy_canonical(K: LatinSquare) -> LatinSquare:
    return _unflatten(min(_reduced_forms0(_as_rows0(K))), K.order)


def is_isotopic(K1: LatinSquare, K2: LatinSquare) -> bool:
    if K1.order != K2.order:
        return False
    return min(_reduced_forms0(_as_rows0(K1))) == min(_reduced_forms0(_as_rows0(K2)))


def _main_class_orbit0(L) -> set[tuple[int, ...]]:
    out = set()
    for Q in _conjugates0(L):
        out |= _reduced_forms0(Q)
    return out


def main_class_canonical(K: LatinSquare) -> LatinSquare:
    """Lexicographically least square in the main class of K."""
    return _unflatten(min(_main_class_orbit0(_as_rows0(K))), K.order)


def same_main_class(K1: LatinSquare, K2: LatinSquare) -> bool:
    return K1.order == K2.order and main_class_canonical(K1) == main_class_canonical(K2)


def reduced_squares(m: int) -> list[tuple[int, ...]]:
    """All reduced Latin squares of order m, flattened with 0-based symbols."""
    if m < 1:
        raise ValueError("order must be positive")
    full = (1 << m) - 1
    grid = [0] * (m * m)
    row_used = [0] * m
    col_used = [0] * m
    for j in range(m):
        grid[j] = j
        row_used[0] |= 1 << j
        col_used[j] |= 1 << j
    for i in range(1, m):
        grid[i * m] = i
        row_used[i] |= 1 << i
        col_used[0] |= 1 << i
    cells = [(i, j) for i in range(1, m) for j in range(1, m)]
    out = []

    def fill(k: int):
        if k == len(cells):
            out.append(tuple(grid))
            return
        i, j = cells[k]
        free = full & ~(row_used[i] | col_used[j])
        while free:
            low = free & -free
            v = low.bit_length() - 1
            grid[i * m + j] = v
            row_used[i] |= low
            col_used[j] |= low
            fill(k + 1)
            row_used[i] ^= low
            col_used[j] ^= low
            free ^= low

    fill(0)
    return out


MAX_CLASSIFY_ORDER = 6


def main_class_representatives(m: int) -> list[LatinSquare]:
    """Canonical representative of every main class of order m (m <= 6)."""
    if not 1 <= m <= MAX_CLASSIFY_ORDER:
        raise ValueError(f"unsupported order {m}: classification covers 1..{MAX_CLASSIFY_ORDER}")
    pending = set(reduced_squares(m))
    reps = []
    while pending:
        seed = min(pending)
        L = tuple(tuple(seed[i * m:(i + 1) * m]) for i in range(m))
        orbit = _main_class_orbit0(L)
        if seed not in orbit or not orbit <= pending:
            raise AssertionError("orbit escaped the reduced-square enumeration")
        pending -= orbit
        reps.append(_unflatten(min(orbit), m))
    return sorted(reps, key=lambda K: K.cells)


def count_main_classes(m: int) -> int:
    return len(main_class_representatives(m))


# ---------------------------------------------------------------------------
# group actions used in tests and experiments

def apply_isotopy(K: LatinSquare, rows: Sequence[int], cols: Sequence[int], syms: Sequence[int]) -> LatinSquare:
    """New square with cell (rows[i], cols[j]) = syms[k_{i,j}] (all 1-based permutations)."""
    m = K.order
    cells = [[0] * m for _ in range(m)]
    for (i, j), k in K.items():
        cells[rows[i - 1] - 1][cols[j - 1] - 1] = syms[k - 1]
    return LatinSquare(cells)
