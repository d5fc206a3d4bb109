import pytest
from hypothesis import given
from hypothesis import strategies as st

from osresonance.exterior import (
    ExteriorElement,
    block_sums,
    boundary,
    decomposable_relation_check,
    mask_of,
    merge_sign,
    wedge,
    wedge_all,
)
from osresonance.latin import InvalidLatin, LatinHypercube, LatinSquare, circuit_family

from conftest import corpus_cubes, corpus_squares, fractions

N = 6


def e(*idx, n=N, c=1):
    return ExteriorElement.monomial(n, idx, c)


@st.composite
def homogeneous(draw, p, n=N):
    subsets = st.lists(st.integers(1, n), min_size=p, max_size=p, unique=True)
    terms = draw(st.lists(st.tuples(subsets, fractions), max_size=4))
    x = ExteriorElement.zero(n)
    for s, c in terms:
        x = x + ExteriorElement.monomial(n, sorted(s), c)
    return x


degrees = st.integers(0, 3)


def test_wedge_examples():
    g = lambda i: ExteriorElement.gen(N, i)
    assert g(1) ^ g(1) == 0
    assert g(2) ^ g(1) == -(g(1) ^ g(2))
    assert (g(1) + g(2)) ^ g(3) == e(1, 3) + e(2, 3)
    assert wedge(g(3), e(1, 2)) == e(1, 2, 3)
    assert wedge(g(2), e(1, 3)) == -e(1, 2, 3)


def test_wedge_needs_same_generators():
    with pytest.raises(ValueError):
        ExteriorElement.gen(3, 1) ^ ExteriorElement.gen(4, 1)


def test_merge_sign_counts_inversions():
    assert merge_sign(mask_of([1]), mask_of([2])) == 1
    assert merge_sign(mask_of([2]), mask_of([1])) == -1
    assert merge_sign(mask_of([2, 3]), mask_of([1])) == 1
    assert merge_sign(mask_of([1, 2]), mask_of([2])) == 0


def test_terms_are_increasing_tuples_without_zeros():
    x = e(3, 1) + e(1, 3)
    assert x == 0 and x.terms == {}
    y = e(2, 1, 4, c=3)
    assert y.terms == {(1, 2, 4): -3}


def test_boundary_examples():
    assert boundary(e(1, 2)) == e(2) - e(1)
    assert boundary(ExteriorElement.one(N)) == 0
    assert boundary(ExteriorElement.gen(N, 4)) == ExteriorElement.one(N)
    assert boundary(boundary(e(1, 2, 3))) == 0


def test_order_two_relation_term_for_term():
    # d(a1 a2 a3) = 2 (d e135 + d e146 + d e236 + d e245), and the degree-2
    # element (e1 + e2 - e5 - e6)(e3 + e4 - e5 - e6) equals that sum
    a = block_sums(6, 2)
    rhs = sum((boundary(e(*S)) for S in [(1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]), ExteriorElement.zero(6))
    assert boundary(wedge_all(6, a)) == rhs * 2
    lhs = (e(1) + e(2) - e(5) - e(6)) ^ (e(3) + e(4) - e(5) - e(6))
    assert lhs == rhs
    assert sorted(rhs.terms) == sorted([(1, 3), (1, 4), (1, 5), (1, 6), (2, 3), (2, 4),
                                        (2, 5), (2, 6), (3, 5), (3, 6), (4, 5), (4, 6)])


@pytest.mark.parametrize("K", corpus_squares() + corpus_cubes(), ids=repr)
def test_decomposable_relation_on_corpus(K):
    assert decomposable_relation_check(K)


def test_decomposable_relation_rejects_invalid_input():
    with pytest.raises(InvalidLatin):
        decomposable_relation_check(LatinHypercube(2, 2, (1, 1, 2, 2)))


def test_relation_fails_for_wrong_family():
    # swapping the symbols of one cell breaks the identity, so the check is not vacuous
    K = LatinSquare([[1, 2], [2, 1]])
    fam = circuit_family(K)
    wrong = [(1, 3, 6), (1, 4, 5), (2, 3, 6), (2, 4, 5)]
    a = block_sums(6, 2)
    total = sum((boundary(e(*S)) for S in wrong), ExteriorElement.zero(6))
    assert set(wrong) != set(fam.members)
    assert boundary(wedge_all(6, a)) != total * 2


@given(degrees.flatmap(homogeneous))
def test_boundary_squares_to_zero(x):
    assert boundary(boundary(x)) == 0


@given(st.data(), degrees, degrees)
def test_graded_leibniz(data, p, q):
    x, y = data.draw(homogeneous(p)), data.draw(homogeneous(q))
    assert boundary(x ^ y) == (boundary(x) ^ y) + (x ^ boundary(y)) * (-1) ** p


@given(st.data(), degrees, degrees, degrees)
def test_wedge_associative(data, p, q, r):
    x, y, z = (data.draw(homogeneous(d)) for d in (p, q, r))
    assert (x ^ y) ^ z == x ^ (y ^ z)


@given(st.data(), degrees, degrees)
def test_graded_commutative(data, p, q):
    x, y = data.draw(homogeneous(p)), data.draw(homogeneous(q))
    assert x ^ y == (y ^ x) * (-1) ** (p * q)


@given(st.lists(fractions, min_size=N, max_size=N))
def test_one_forms_square_to_zero(coeffs):
    w = ExteriorElement.linear(coeffs)
    assert w ^ w == 0
