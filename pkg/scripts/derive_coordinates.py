"""Derive labelled coordinates for the Ceva, Pappus and B3 catalog entries.

Each configuration is built from its classical construction, its matroid is
matched against the combinatorial target by isomorphism search, and the
vectors are printed in the target's labelling.  The printed lists are the
constants stored in osresonance.realization.
"""
from fractions import Fraction as F

from osresonance.latin import build_matroid
from osresonance.realization import (
    B3_CLASSES,
    B3_FORMS,
    NAMED_SQUARES,
    Configuration,
    b3_simple_target,
    underlying_matroid,
)


def relabel(vectors, target):
    M = underlying_matroid(Configuration(vectors))
    iso = M.isomorphic(target)
    if iso is None:
        raise SystemExit("construction does not realize the target matroid")
    out = [None] * len(vectors)
    for i, j in iso.items():
        out[j - 1] = vectors[i - 1]
    assert underlying_matroid(Configuration(out)) == target
    return out


def cross(p, q):
    return [p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]]


def normalise(v):
    v = [F(x) for x in v]
    lead = next(x for x in v if x)
    return [x / lead for x in v]


def ceva():
    forms = [[1, -1, 0], [1, 1, 0], [0, 1, -1], [0, 1, 1], [1, 0, -1], [1, 0, 1]]
    return relabel(forms, build_matroid(NAMED_SQUARES["K_order2"]))


def pappus():
    # A_i on the line y = 0, B_j on the line y = x + 3; C_ij = A_iB_j ^ A_jB_i
    A = [[F(a), F(0), F(1)] for a in (0, 1, 3)]
    B = [[F(b), F(b + 3), F(1)] for b in (1, 4, 9)]
    pts = A + B
    for i, j in ((0, 1), (0, 2), (1, 2)):
        l1 = cross(A[i], B[j])
        l2 = cross(A[j], B[i])
        pts.append(cross(l1, l2))
    pts = [normalise(p) for p in pts]
    return relabel(pts, build_matroid(NAMED_SQUARES["K1_order3"]))


def b3():
    simple = relabel(B3_FORMS, b3_simple_target())
    out = []
    for k, c in enumerate(B3_CLASSES):
        out.extend([simple[k]] * len(c))
    return out


def show(name, vecs):
    print(f"{name} = [")
    for v in vecs:
        print("    [" + ", ".join(repr(x) if not isinstance(x, F) else (str(x) if x.denominator == 1 else f"F({x.numerator}, {x.denominator})") for x in v) + "],")
    print("]")


if __name__ == "__main__":
    show("CEVA_VECTORS", ceva())
    show("PAPPUS_VECTORS", pappus())
    show("B3_VECTORS", b3())
