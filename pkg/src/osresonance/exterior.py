"""Sparse exterior algebra on generators e_1..e_n with the boundary map.

Basis monomials are stored as bitmasks (bit i-1 stands for e_i), so a term
``{0b101: 2}`` is ``2 e_1 e_3``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        if i < 1:
            raise ValueError(f"indices are 1-based, got {i}")
        m |= 1 << (i - 1)
    return m


def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def bits(mask: int) -> list[int]:
    """Zero-based bit positions of mask, increasing."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def merge_sign(a: int, b: int) -> int:
    """Sign of e_a ^ e_b relative to the sorted monomial of a | b (0 if they meet)."""
    if a & b:
        return 0
    swaps = 0
    for j in bits(b):
        swaps += (a >> (j + 1)).bit_count()
    return -1 if swaps & 1 else 1


class ExteriorElement:
    """Immutable sparse element of the exterior algebra on n generators."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[int, object] | None = None):
        self.n = n
        clean = {}
        if terms:
            limit = 1 << n
            for m, c in terms.items():
                if m >= limit or m < 0:
                    raise ValueError(f"monomial {indices_of(m)} outside [1..{n}]")
                if c:
                    clean[m] = c
        self._terms = clean

    @classmethod
    def _raw(cls, n: int, terms: dict) -> "ExteriorElement":
        x = cls.__new__(cls)
        x.n = n
        x._terms = terms
        return x

    # constructors ------------------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "ExteriorElement":
        return cls._raw(n, {})

    @classmethod
    def one(cls, n: int) -> "ExteriorElement":
        return cls._raw(n, {0: 1})

    @classmethod
    def gen(cls, n: int, i: int) -> "ExteriorElement":
        return cls(n, {mask_of([i]): 1})

    @classmethod
    def monomial(cls, n: int, indices: Sequence[int], coeff=1) -> "ExteriorElement":
        """e_{i_1} ^ ... ^ e_{i_p} in the given (not necessarily sorted) order."""
        x = cls.one(n)
        for i in indices:
            x = x ^ cls.gen(n, i)
        return x * coeff

    @classmethod
    def linear(cls, coeffs: Sequence) -> "ExteriorElement":
        """The one-form sum coeffs[i-1] e_i."""
        n = len(coeffs)
        return cls(n, {1 << i: c for i, c in enumerate(coeffs)})

    # views -------------------------------------------------------------------
    @property
    def terms(self) -> dict[tuple[int, ...], object]:
        return {indices_of(m): c for m, c in sorted(self._terms.items())}

    def mask_terms(self) -> dict[int, object]:
        return dict(self._terms)

    def degree_part(self, p: int) -> "ExteriorElement":
        return ExteriorElement._raw(self.n, {m: c for m, c in self._terms.items() if m.bit_count() == p})

    def degrees(self) -> set[int]:
        return {m.bit_count() for m in self._terms}

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __eq__(self, other):
        if isinstance(other, ExteriorElement):
            return self.n == other.n and self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for m, c in sorted(self._terms.items(), key=lambda t: (t[0].bit_count(), indices_of(t[0]))):
            mono = "^".join(f"e{i}" for i in indices_of(m)) or "1"
            parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    # arithmetic --------------------------------------------------------------
    def _check(self, other: "ExteriorElement"):
        if not isinstance(other, ExteriorElement):
            raise TypeError("expected an ExteriorElement")
        if other.n != self.n:
            raise ValueError(f"generator counts differ: {self.n} vs {other.n}")

    def __add__(self, other):
        self._check(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return ExteriorElement._raw(self.n, out)

    def __neg__(self):
        return ExteriorElement._raw(self.n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, ExteriorElement):
            return NotImplemented
        if not scalar:
            return ExteriorElement.zero(self.n)
        return ExteriorElement._raw(self.n, {m: c * scalar for m, c in self._terms.items()})

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge(self, other)


def wedge(x: ExteriorElement, y: ExteriorElement) -> ExteriorElement:
    x._check(y)
    out: dict[int, object] = {}
    for a, ca in x._terms.items():
        for b, cb in y._terms.items():
            s = merge_sign(a, b)
            if not s:
                continue
            m = a | b
            v = out.get(m, 0) + (ca * cb if s > 0 else -(ca * cb))
            if v:
                out[m] = v
            else:
                del out[m]
    return ExteriorElement._raw(x.n, out)


def boundary_mask(mask: int) -> list[tuple[int, int]]:
    """Terms (sign, face) of the boundary of the monomial ``mask``."""
    out = []
    for k, b in enumerate(bits(mask)):
        out.append((-1 if k & 1 else 1, mask ^ (1 << b)))
    return out


def boundary(x: ExteriorElement) -> ExteriorElement:
    out: dict[int, object] = {}
    for m, c in x._terms.items():
        for s, face in boundary_mask(m):
            v = out.get(face, 0) + (c if s > 0 else -c)
            if v:
                out[face] = v
            else:
                del out[face]
    return ExteriorElement._raw(x.n, out)


def block_sums(n: int, m: int) -> list[ExteriorElement]:
    """a_s = e_{(s-1)m+1} + ... + e_{sm} for each block s of size m."""
    if n % m:
        raise ValueError("block size must divide n")
    return [ExteriorElement(n, {1 << i: 1 for i in range(s * m, (s + 1) * m)}) for s in range(n // m)]


def wedge_all(n: int, factors: Iterable[ExteriorElement]) -> ExteriorElement:
    acc = ExteriorElement.one(n)
    for f in factors:
        acc = acc ^ f
    return acc


def decomposable_relation_check(K) -> bool:
    """Check the Latin hypercube decomposable relation identically in E.

    With a_s the block sums and C[K] the circuit family of K, verifies

        d(a_1...a_{l+1}) = -(a_1 - a_2) d(a_2...a_{l+1})
                         = (-1)^l m (a_1 - a_2)...(a_l - a_{l+1})
                         = m * sum_{S in C[K]} d(e_S).
    """
    from .latin import circuit_family

    K.validate()
    ell, m = K.dim, K.order
    n = (ell + 1) * m
    a = block_sums(n, m)
    lhs = boundary(wedge_all(n, a))
    second = -((a[0] - a[1]) ^ boundary(wedge_all(n, a[1:])))
    diffs = wedge_all(n, (a[i] - a[i + 1] for i in range(ell)))
    third = diffs * ((-1) ** ell * m)
    fam = circuit_family(K)
    total = ExteriorElement.zero(n)
    for S in fam.members:
        total = total + boundary(ExteriorElement.monomial(n, S))
    fourth = total * m
    return lhs == second == third == fourth
