"""Matroids given by their circuits.

Ground sets are [n] = {1..n}; circuits are kept internally as bitmasks and
exposed as sorted tuples.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Iterable, Sequence

from .exterior import bits, indices_of, mask_of


class NotACircuitFamily(ValueError):
    pass


@dataclass(frozen=True)
class CircuitFamily:
    """A family of k-subsets of [n]."""

    n: int
    k: int
    members: tuple[tuple[int, ...], ...]

    def __init__(self, n: int, k: int, members: Iterable[Iterable[int]]):
        ms = sorted({tuple(sorted(c)) for c in members})
        for c in ms:
            if len(c) != k:
                raise ValueError(f"member {c} does not have size {k}")
            if c and (c[0] < 1 or c[-1] > n):
                raise ValueError(f"member {c} outside [1..{n}]")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "members", tuple(ms))

    def masks(self) -> set[int]:
        return {mask_of(c) for c in self.members}

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def union(self, other: Iterable[Iterable[int]]) -> "CircuitFamily":
        return CircuitFamily(self.n, self.k, list(self.members) + [tuple(c) for c in other])


def check_condition(C: CircuitFamily, ell: int) -> bool:
    """Closure condition C_{l+1}: two members whose union has l+2 elements
    force every (l+1)-subset of that union into the family."""
    if C.k != ell + 1:
        raise ValueError(f"circuit size {C.k} does not match l+1 = {ell + 1}")
    masks = C.masks()
    # members sharing an l-subset are exactly the pairs with |union| = l+2
    by_ridge: dict[int, list[int]] = {}
    for c in masks:
        for b in bits(c):
            by_ridge.setdefault(c ^ (1 << b), []).append(c)
    for ridge, group in by_ridge.items():
        if len(group) < 2:
            continue
        for c1, c2 in combinations(group, 2):
            u = c1 | c2
            for b in bits(u):
                if u ^ (1 << b) not in masks:
                    return False
    return True


class Matroid:
    """A matroid on [n] described by its complete circuit family."""

    def __init__(self, n: int, circuits: Iterable[Iterable[int]] | Iterable[int], *, masks: bool = False):
        self.n = n
        if masks:
            cm = frozenset(circuits)
        else:
            cm = frozenset(mask_of(c) for c in circuits)
        if any(c == 0 for c in cm):
            raise ValueError("empty circuit")
        if cm and max(cm).bit_length() > n:
            raise ValueError("circuit outside ground set")
        self.circuit_masks = cm
        self._indep_cache: dict[int, bool] = {}
        self._by_size: dict[int, frozenset[int]] = {}
        for c in cm:
            self._by_size.setdefault(c.bit_count(), set()).add(c)
        self._by_size = {k: frozenset(v) for k, v in self._by_size.items()}
        self.rank = self.rank_of((1 << n) - 1)

    # basic oracles -----------------------------------------------------------
    @property
    def circuits(self) -> list[tuple[int, ...]]:
        return sorted(indices_of(c) for c in self.circuit_masks)

    def circuits_of_size(self, k: int) -> list[tuple[int, ...]]:
        return sorted(indices_of(c) for c in self._by_size.get(k, ()))

    @property
    def ground_mask(self) -> int:
        return (1 << self.n) - 1

    def contains_circuit(self, S: int) -> bool:
        size = S.bit_count()
        el = bits(S)
        for k, group in self._by_size.items():
            if k > size:
                continue
            if k == size:
                if S in group:
                    return True
                continue
            # choose the cheaper of scanning circuits or enumerating subsets
            if len(group) < 64 or size > 20:
                if any(c & S == c for c in group):
                    return True
            else:
                for sub in combinations(el, k):
                    m = 0
                    for b in sub:
                        m |= 1 << b
                    if m in group:
                        return True
        return False

    def is_independent(self, S: int | Iterable[int]) -> bool:
        if not isinstance(S, int):
            S = mask_of(S)
        hit = self._indep_cache.get(S)
        if hit is None:
            hit = not self.contains_circuit(S)
            self._indep_cache[S] = hit
        return hit

    def rank_of(self, S: int | Iterable[int]) -> int:
        if not isinstance(S, int):
            S = mask_of(S)
        basis = 0
        for b in bits(S):
            if self.is_independent(basis | (1 << b)):
                basis |= 1 << b
        return basis.bit_count()

    def closure(self, S: int) -> int:
        r = self.rank_of(S)
        out = S
        for b in range(self.n):
            if not S >> b & 1 and self.rank_of(S | (1 << b)) == r:
                out |= 1 << b
        return out

    def flats(self, k: int) -> list[tuple[int, ...]]:
        """All flats of rank k."""
        found = set()
        for sub in combinations(range(self.n), k):
            m = 0
            for b in sub:
                m |= 1 << b
            if self.is_independent(m):
                found.add(self.closure(m))
        return sorted(indices_of(f) for f in found)

    def loops(self) -> list[int]:
        return [indices_of(c)[0] for c in self._by_size.get(1, ())]

    def is_generic(self, ell: int) -> bool:
        return all(c.bit_count() > ell for c in self.circuit_masks)

    # axioms ------------------------------------------------------------------
    def check_circuit_axioms(self) -> bool:
        """Exhaustive check: nonempty, incomparable, strong-enough elimination."""
        cs = list(self.circuit_masks)
        for c1 in cs:
            for c2 in cs:
                if c1 != c2 and c1 & c2 == c1:
                    return False
        seen: dict[int, bool] = {}
        for i, c1 in enumerate(cs):
            for c2 in cs[i + 1:]:
                common = c1 & c2
                if not common:
                    continue
                u = c1 | c2
                for b in bits(common):
                    x = u ^ (1 << b)
                    ok = seen.get(x)
                    if ok is None:
                        ok = self.contains_circuit(x)
                        seen[x] = ok
                    if not ok:
                        return False
        return True

    # nbc machinery -----------------------------------------------------------
    def _order_rank(self, order: Sequence[int] | None) -> list[int]:
        if order is None:
            return list(range(self.n))
        if sorted(order) != list(range(1, self.n + 1)):
            raise ValueError("order must be a permutation of the ground set")
        pos = [0] * self.n
        for k, e in enumerate(order):
            pos[e - 1] = k
        return pos

    def broken_circuit_map(self, order: Sequence[int] | None = None) -> dict[int, tuple[int, int]]:
        """broken-circuit mask -> (circuit mask, bit of the order-least element)."""
        if self.loops():
            raise ValueError("matroid has loops")
        pos = self._order_rank(order)
        out: dict[int, tuple[int, int]] = {}
        for c in sorted(self.circuit_masks):
            least = min(bits(c), key=lambda b: pos[b])
            out.setdefault(c ^ (1 << least), (c, least))
        return out

    def broken_circuits(self, order: Sequence[int] | None = None) -> list[tuple[int, ...]]:
        return sorted(indices_of(b) for b in self.broken_circuit_map(order))

    def nbc_masks(self, p: int, order: Sequence[int] | None = None) -> list[int]:
        bc = self.broken_circuit_map(order)
        by_size: dict[int, set[int]] = {}
        for b in bc:
            by_size.setdefault(b.bit_count(), set()).add(b)
        # grow nbc sets one element at a time; subsets of nbc sets are nbc
        layer = [0]
        for size in range(1, p + 1):
            nxt = set()
            for s in layer:
                top = s.bit_length()
                for b in range(top, self.n):
                    t = s | (1 << b)
                    if not _has_subset_in(t, by_size):
                        nxt.add(t)
            layer = sorted(nxt)
        return sorted(layer, key=indices_of)

    def nbc_sets(self, p: int, order: Sequence[int] | None = None) -> list[tuple[int, ...]]:
        return [indices_of(m) for m in self.nbc_masks(p, order)]

    # restriction / isomorphism -------------------------------------------------
    def restriction(self, S: Iterable[int]) -> "Matroid":
        """Restriction to S, relabelled 1..|S| in increasing order."""
        S = sorted(set(S))
        smask = mask_of(S)
        relabel = {e: k + 1 for k, e in enumerate(S)}
        cs = [[relabel[e] for e in indices_of(c)] for c in self.circuit_masks if c & smask == c]
        return Matroid(len(S), cs)

    def isomorphic(self, other: "Matroid") -> dict[int, int] | None:
        """A ground-set bijection carrying circuits onto circuits, or None."""
        return find_isomorphism(self, other)

    def simplification(self) -> tuple["Matroid", list[int]]:
        """Simple matroid on one representative (least) per parallel class."""
        if self.loops():
            raise ValueError("matroid has loops")
        reps = []
        for e in range(1, self.n + 1):
            if not any(not self.is_independent(mask_of([r, e])) for r in reps):
                reps.append(e)
        return self.restriction(reps), reps

    # comparison / io ---------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, Matroid) and self.n == other.n and self.circuit_masks == other.circuit_masks

    def __hash__(self):
        return hash((self.n, self.circuit_masks))

    def __repr__(self):
        sizes = {k: len(v) for k, v in sorted(self._by_size.items())}
        return f"Matroid(n={self.n}, rank={self.rank}, circuits by size={sizes})"

    def to_dict(self) -> dict:
        return {"n": self.n, "rank": self.rank, "circuits": [list(c) for c in self.circuits]}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "Matroid":
        for key in ("n", "rank", "circuits"):
            if key not in d:
                raise ValueError(f"matroid JSON missing {key!r}")
        M = cls(int(d["n"]), [tuple(c) for c in d["circuits"]])
        if M.rank != int(d["rank"]):
            raise ValueError(f"declared rank {d['rank']} but circuits give {M.rank}")
        return M

    @classmethod
    def from_json(cls, text: str) -> "Matroid":
        return cls.from_dict(json.loads(text))


def _has_subset_in(t: int, by_size: dict[int, set[int]]) -> bool:
    size = t.bit_count()
    el = bits(t)
    for k, group in by_size.items():
        if k > size:
            continue
        if k == size:
            if t in group:
                return True
            continue
        if len(group) < 32:
            if any(g & t == g for g in group):
                return True
            continue
        for sub in combinations(el, k):
            m = 0
            for b in sub:
                m |= 1 << b
            if m in group:
                return True
    return False


def close_family(C: CircuitFamily, ell: int) -> CircuitFamily:
    """Smallest family containing C that satisfies condition C_{l+1}."""
    masks = C.masks()
    changed = True
    while changed:
        changed = False
        by_ridge: dict[int, list[int]] = {}
        for c in masks:
            for b in bits(c):
                by_ridge.setdefault(c ^ (1 << b), []).append(c)
        for group in by_ridge.values():
            for c1, c2 in combinations(group, 2):
                u = c1 | c2
                for b in bits(u):
                    if u ^ (1 << b) not in masks:
                        masks.add(u ^ (1 << b))
                        changed = True
    return CircuitFamily(C.n, C.k, [indices_of(c) for c in masks])


def parallel_extension(M: Matroid, classes: Sequence[Sequence[int]]) -> Matroid:
    """Matroid on sum(len(classes)) elements where classes[i] are copies of element i+1 of M."""
    if len(classes) != M.n:
        raise ValueError("need one parallel class per element")
    n = sum(len(c) for c in classes)
    if sorted(e for c in classes for e in c) != list(range(1, n + 1)):
        raise ValueError("classes must partition the new ground set")
    circuits = set()
    for c in classes:
        circuits.update(combinations(sorted(c), 2))
    for circ in M.circuits:
        for choice in product(*(classes[e - 1] for e in circ)):
            circuits.add(tuple(sorted(choice)))
    return Matroid(n, circuits)


def uniform(r: int, n: int) -> Matroid:
    """U_{r,n}: every (r+1)-subset is a circuit."""
    if r >= n:
        return Matroid(n, [])
    return Matroid(n, combinations(range(1, n + 1), r + 1))


def matroid_from_top_circuits(C: CircuitFamily, ell: int, n: int | None = None) -> Matroid:
    """The unique l-generic rank-(l+1) matroid whose (l+1)-circuits are C."""
    n = C.n if n is None else n
    if not check_condition(C, ell):
        raise NotACircuitFamily("not a circuit family")
    masks = C.masks()
    if n >= ell + 1 and len(masks) == comb(n, ell + 1):
        raise NotACircuitFamily(f"degenerate: uniform U_{{{ell},{n}}}")
    circuits = set(masks)
    for sub in combinations(range(n), ell + 2):
        m = 0
        for b in sub:
            m |= 1 << b
        if not any((m ^ (1 << b)) in masks for b in sub):
            circuits.add(m)
    return Matroid(n, circuits, masks=True)


# ---------------------------------------------------------------------------
# isomorphism

def find_isomorphism(M1: Matroid, M2: Matroid) -> dict[int, int] | None:
    """Individualise-and-refine search for a circuit-preserving bijection."""
    if M1.n != M2.n or M1.rank != M2.rank:
        return None
    s1 = sorted(c.bit_count() for c in M1.circuit_masks)
    s2 = sorted(c.bit_count() for c in M2.circuit_masks)
    if s1 != s2:
        return None
    n = M1.n
    through = (_through(M1), _through(M2))
    set2 = M2.circuit_masks

    def search(col1: list[int], col2: list[int]) -> dict[int, int] | None:
        col1, col2 = _joint_refine(through, col1, col2)
        if sorted(col1) != sorted(col2):
            return None
        classes: dict[int, list[int]] = {}
        for e, c in enumerate(col1):
            classes.setdefault(c, []).append(e)
        cell = min((v for v in classes.values() if len(v) > 1), key=len, default=None)
        if cell is None:
            where = {c: e for e, c in enumerate(col2)}
            fwd = [where[c] for c in col1]
            for c in M1.circuit_masks:
                im = 0
                for b in bits(c):
                    im |= 1 << fwd[b]
                if im not in set2:
                    return None
            return {x + 1: fwd[x] + 1 for x in range(n)}
        x = cell[0]
        fresh = max(max(col1), max(col2)) + 1
        for y in range(n):
            if col2[y] != col1[x]:
                continue
            a, b = list(col1), list(col2)
            a[x] = b[y] = fresh
            found = search(a, b)
            if found is not None:
                return found
        return None

    return search([0] * n, [0] * n)


def _through(M: Matroid) -> list[list[tuple[int, ...]]]:
    """For each element, the other members of every circuit through it.

    Circuits of size rank+1 are exactly the (rank+1)-sets containing no
    smaller circuit, so they carry no extra information and are skipped.
    """
    t: list[list[tuple[int, ...]]] = [[] for _ in range(M.n)]
    for c in M.circuit_masks:
        if c.bit_count() > M.rank:
            continue
        el = bits(c)
        for b in el:
            t[b].append(tuple(x for x in el if x != b))
    return t


def _joint_refine(through, col1: list[int], col2: list[int]):
    """Refine two colourings with a shared palette until stable."""
    cols = [list(col1), list(col2)]
    ncolors = len(set(cols[0]) | set(cols[1]))
    while True:
        sigs = []
        for side in (0, 1):
            cs = cols[side]
            s = []
            for e in range(len(cs)):
                nb = sorted(tuple(sorted(cs[b] for b in rest)) for rest in through[side][e])
                s.append((cs[e], tuple(nb)))
            sigs.append(s)
        palette = {s: k for k, s in enumerate(sorted(set(sigs[0]) | set(sigs[1])))}
        new = [[palette[s] for s in sigs[0]], [palette[s] for s in sigs[1]]]
        k = len(palette)
        cols = new
        if k == ncolors:
            return cols[0], cols[1]
        ncolors = k
