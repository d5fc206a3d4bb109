"""Exact scalars and linear algebra.

Rationals are :class:`fractions.Fraction`.  Cyclotomic numbers are residues
modulo the cyclotomic polynomial, so every nonzero element is invertible and
zero-testing is unambiguous.  Rank and kernel computations work over either
field; rational matrices are eliminated fraction-free on integer rows.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction, "Cyclotomic"]


class IncompatibleFields(ValueError):
    pass


# ---------------------------------------------------------------------------
# cyclotomic polynomials

def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # den is monic; coefficient lists are low -> high
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1]
        if c:
            q[shift] = c
            for i, d in enumerate(den):
                num[shift + i] -= c * d
    rem = num[: len(den) - 1]
    return q, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def totient(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _pdivmod(a: list, b: list) -> tuple[list, list]:
    a = _trim([Fraction(x) for x in a])
    b = _trim([Fraction(x) for x in b])
    if not b:
        raise ZeroDivisionError("division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, d in enumerate(b):
            a[shift + i] -= c * d
        _trim(a)
    return q, a


def _pmul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _psub(a: Sequence, b: Sequence) -> list:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] -= x
    return _trim(out)


# ---------------------------------------------------------------------------

class Cyclotomic:
    """Element of Q(zeta_n) stored as coefficients of 1, zeta, ..., zeta^(phi(n)-1)."""

    __slots__ = ("conductor", "coeffs", "_hash")

    def __init__(self, conductor: int, coeffs: Iterable = ()):
        modulus = cyclotomic_polynomial(conductor)
        deg = len(modulus) - 1
        c = [Fraction(x) for x in coeffs]
        if len(c) > deg:
            c = self._reduce(c, modulus)
        c += [Fraction(0)] * (deg - len(c))
        self.conductor = conductor
        self.coeffs = tuple(c)
        self._hash = None

    @staticmethod
    def _reduce(c: list, modulus: Sequence[int]) -> list:
        deg = len(modulus) - 1
        c = list(c)
        for top in range(len(c) - 1, deg - 1, -1):
            t = c[top]
            if t:
                shift = top - deg
                for i, m in enumerate(modulus):
                    c[shift + i] -= t * m
        return c[:deg]

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> "Cyclotomic":
        """The power zeta_n**k."""
        k %= n
        return cls(n, [0] * k + [1])

    @classmethod
    def rational(cls, n: int, value) -> "Cyclotomic":
        return cls(n, [value])

    # coercion --------------------------------------------------------------
    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.conductor != self.conductor:
                raise IncompatibleFields("incompatible fields")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.conductor, [other])
        return NotImplemented

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.conductor, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.conductor, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.conductor, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.conductor, [a * other for a in self.coeffs])
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return cyclotomic_mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return Cyclotomic(self.conductor, [a / other for a in self.coeffs])
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return cyclotomic_mul(self, cyclotomic_inv(o))

    def __rtruediv__(self, other):
        return cyclotomic_inv(self) * other

    def __pow__(self, k: int):
        if k < 0:
            return cyclotomic_inv(self) ** (-k)
        acc = Cyclotomic(self.conductor, [1])
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Cyclotomic):
            return self.conductor == other.conductor and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.conductor, self.coeffs))
        return self._hash

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
                terms.append(f"{c}*{mono}" if mono else str(c))
        body = " + ".join(terms) or "0"
        return f"Cyclotomic({self.conductor}: {body})"

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]


def cyclotomic_mul(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    if a.conductor != b.conductor:
        raise IncompatibleFields("incompatible fields")
    prod = _pmul(a.coeffs, b.coeffs)
    return Cyclotomic(a.conductor, prod)


def cyclotomic_inv(a: Cyclotomic) -> Cyclotomic:
    """Inverse via the extended Euclidean algorithm against Phi_n."""
    if not a:
        raise ZeroDivisionError("division by zero")
    modulus = [Fraction(x) for x in cyclotomic_polynomial(a.conductor)]
    old_r, r = _trim(list(a.coeffs)), modulus
    old_s, s = [Fraction(1)], []
    while r:
        q, rem = _pdivmod(old_r, r)
        old_r, r = r, rem
        old_s, s = s, _psub(old_s, _pmul(q, s))
    # old_r is a nonzero constant since Phi_n is irreducible
    assert len(old_r) == 1
    inv = [c / old_r[0] for c in old_s]
    return Cyclotomic(a.conductor, inv)


# ---------------------------------------------------------------------------
# parsing / formatting

def format_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text) -> Fraction:
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    return Fraction(str(text).strip())


def scalar_to_json(x):
    if isinstance(x, Cyclotomic):
        return x.to_json()
    return format_rational(x)


def scalar_from_json(obj, conductor: int | None = None):
    if isinstance(obj, list):
        if conductor is None:
            raise ValueError("cyclotomic scalar needs a conductor")
        return Cyclotomic(conductor, [parse_rational(t) for t in obj])
    return parse_rational(obj)


# ---------------------------------------------------------------------------
# linear algebra

def field_of(values: Iterable) -> int | None:
    """Conductor shared by the cyclotomic entries, or None when all rational."""
    conductor = None
    for v in values:
        if isinstance(v, Cyclotomic):
            if conductor is None:
                conductor = v.conductor
            elif v.conductor != conductor:
                raise IncompatibleFields("incompatible fields")
        elif not isinstance(v, (int, Fraction)):
            raise TypeError(f"not an exact scalar: {v!r}")
    return conductor


def _integer_row(row: dict) -> dict:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    out = {}
    for c, v in row.items():
        iv = int(v * den) if den != 1 else int(v)
        if iv:
            out[c] = iv
    return _primitive(out)


def _primitive(row: dict) -> dict:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def _integer_rank(rows: list[dict], pivot_rule: str = "bits") -> int:
    """Fraction-free elimination on sparse integer rows.

    Each elimination step replaces r by p*r - f*pivot and divides out the row
    content, so entries stay integral and bounded by the content gcd.
    """
    rows = [r for r in rows if r]
    rank = 0
    while rows:
        if pivot_rule == "bits":
            # pivot: row with fewest entries, then smallest leading bit-length
            best = min(
                range(len(rows)),
                key=lambda i: (len(rows[i]), min(abs(v).bit_length() for v in rows[i].values())),
            )
            prow = rows.pop(best)
            col = min(prow, key=lambda c: (abs(prow[c]).bit_length(), c))
        else:
            prow = rows.pop()
            col = max(prow)
        p = prow[col]
        rank += 1
        nxt = []
        for r in rows:
            f = r.get(col)
            if f is None:
                nxt.append(r)
                continue
            g = gcd(p, f)
            a, b = p // g, f // g
            new = {c: a * v for c, v in r.items()}
            for c, v in prow.items():
                w = new.get(c, 0) - b * v
                if w:
                    new[c] = w
                else:
                    new.pop(c, None)
            if new:
                nxt.append(_primitive(new))
        rows = nxt
    return rank


def _field_rank(rows: list[dict], pivot_rule: str = "sparse") -> int:
    rows = [r for r in rows if r]
    rank = 0
    while rows:
        if pivot_rule == "sparse":
            best = min(range(len(rows)), key=lambda i: len(rows[i]))
            prow = rows.pop(best)
            col = min(prow)
        else:
            prow = rows.pop()
            col = max(prow)
        inv = 1 / prow[col]
        rank += 1
        nxt = []
        for r in rows:
            f = r.get(col)
            if f is None:
                nxt.append(r)
                continue
            factor = f * inv
            new = dict(r)
            for c, v in prow.items():
                w = new.get(c, 0) - factor * v
                if w:
                    new[c] = w
                else:
                    new.pop(c, None)
            if new:
                nxt.append(new)
        rows = nxt
    return rank


def sparse_rank(rows: Sequence[dict], check: bool = False) -> int:
    """Exact rank of a matrix given as sparse rows ``{column: value}``."""
    conductor = field_of(v for r in rows for v in r.values())
    if conductor is None:
        irows = [_integer_row(r) for r in rows]
        rk = _integer_rank(irows)
        if check:
            other = _integer_rank(irows, pivot_rule="last")
            assert rk == other, f"rank self-check failed: {rk} != {other}"
        return rk
    crows = [{c: (v if isinstance(v, Cyclotomic) else Cyclotomic(conductor, [v]))
              for c, v in r.items() if v} for r in rows]
    rk = _field_rank(crows)
    if check:
        other = _field_rank(crows, pivot_rule="last")
        assert rk == other, f"rank self-check failed: {rk} != {other}"
    return rk


class Matrix:
    """Dense matrix of exact scalars (rows of equal length)."""

    def __init__(self, rows: Sequence[Sequence], cols: int | None = None):
        self.entries = tuple(tuple(r) for r in rows)
        self.rows = len(self.entries)
        if cols is None:
            cols = len(self.entries[0]) if self.entries else 0
        self.cols = cols
        for r in self.entries:
            if len(r) != cols:
                raise ValueError("ragged matrix")
        self.conductor = field_of(v for r in self.entries for v in r)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    def sparse_rows(self) -> list[dict]:
        return [{j: v for j, v in enumerate(r) if v} for r in self.entries]

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols})"


def rank(m: Matrix, check: bool = False) -> int:
    return sparse_rank(m.sparse_rows(), check=check)


def rref(m: Matrix) -> tuple[list[list], list[int]]:
    """Reduced row echelon form over the entries' field; returns (rows, pivots)."""
    one = 1 if m.conductor is None else Cyclotomic(m.conductor, [1])
    a = [[(Fraction(v) if not isinstance(v, Cyclotomic) else v) for v in r] for r in m.entries]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, m.rows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = one / a[r][c]
        a[r] = [v * inv for v in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return a[:r], pivots


def kernel_basis(m: Matrix) -> list[list]:
    """Basis of the right kernel {v : m v = 0}."""
    rows, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for row, pc in zip(rows, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis
