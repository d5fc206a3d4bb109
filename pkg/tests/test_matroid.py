import json
import random
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from osresonance.latin import (
    build_matroid,
    circuit_family,
    cyclic_hypercube,
    degenerate_with_subsquare,
    subsquare,
)
from osresonance.matroid import (
    CircuitFamily,
    Matroid,
    NotACircuitFamily,
    check_condition,
    close_family,
    matroid_from_top_circuits,
    parallel_extension,
    uniform,
)
from osresonance.realization import CEVA_VECTORS, NAMED_SQUARES, Configuration

from conftest import corpus_cubes, corpus_squares, small_matroids


def brute_force_circuits(n, dependent):
    """Minimal sets among all subsets of [n] for which dependent(S) holds."""
    found = []
    for k in range(1, n + 1):
        for S in combinations(range(1, n + 1), k):
            if any(set(c) <= set(S) for c in found):
                continue
            if dependent(S):
                found.append(S)
    return sorted(found)


def random_relabel(M, rng):
    perm = list(range(1, M.n + 1))
    rng.shuffle(perm)
    return Matroid(M.n, [[perm[e - 1] for e in c] for c in M.circuits]), perm


# condition C_{l+1} -----------------------------------------------------------------

def test_condition_examples():
    assert not check_condition(CircuitFamily(4, 3, [(1, 2, 3), (1, 2, 4)]), 2)
    assert check_condition(CircuitFamily(4, 3, combinations(range(1, 5), 3)), 2)
    with pytest.raises(ValueError):
        check_condition(CircuitFamily(4, 3, [(1, 2, 3)]), 3)


@pytest.mark.parametrize("K", corpus_squares() + corpus_cubes(), ids=repr)
def test_latin_families_satisfy_condition(K):
    C = circuit_family(K)
    assert check_condition(C, K.dim)
    for c1, c2 in combinations(C.members, 2):
        assert len(set(c1) | set(c2)) >= K.dim + 3


@given(st.sets(st.sets(st.integers(1, 6), min_size=3, max_size=3).map(frozenset), max_size=8))
def test_close_family_is_least_closed_superset(members):
    C = CircuitFamily(6, 3, members)
    D = close_family(C, 2)
    assert check_condition(D, 2)
    assert set(C.members) <= set(D.members)
    # every added member is forced: removing it breaks the condition or C
    for extra in set(D.members) - set(C.members):
        smaller = CircuitFamily(6, 3, [c for c in D.members if c != extra])
        assert not check_condition(smaller, 2)


# building from top circuits --------------------------------------------------------

def test_empty_family_gives_uniform():
    M = matroid_from_top_circuits(CircuitFamily(4, 3, []), 2, 4)
    assert M.circuits == [(1, 2, 3, 4)]
    assert M == uniform(3, 4)


def test_single_triple():
    M = matroid_from_top_circuits(CircuitFamily(4, 3, [(1, 2, 3)]), 2, 4)
    assert M.circuits == [(1, 2, 3)]
    assert not M.is_independent((1, 2, 3, 4))


def test_errors():
    with pytest.raises(NotACircuitFamily, match="not a circuit family"):
        matroid_from_top_circuits(CircuitFamily(4, 3, [(1, 2, 3), (1, 2, 4)]), 2, 4)
    with pytest.raises(NotACircuitFamily, match="degenerate: uniform"):
        matroid_from_top_circuits(CircuitFamily(4, 3, combinations(range(1, 5), 3)), 2, 4)


def test_ceva_against_two_brute_force_oracles():
    K = NAMED_SQUARES["K_order2"]
    C = circuit_family(K)
    M = matroid_from_top_circuits(C, 2, 6)
    top = set(C.members)
    combinatorial = brute_force_circuits(6, lambda S: len(S) > 3 or (len(S) == 3 and S in top))
    conf = Configuration(CEVA_VECTORS)
    linear = brute_force_circuits(6, lambda S: conf.rank_of(S) < len(S))
    assert M.circuits == combinatorial == linear
    # 4 triples plus the 15 - 12 four-sets containing none of them
    assert len(M.circuits) == 7


@pytest.mark.parametrize("K", corpus_squares() + corpus_cubes(), ids=repr)
def test_built_matroid_properties(K):
    ell = K.dim
    C = circuit_family(K)
    M = build_matroid(K)
    assert M.is_generic(ell) and not M.is_generic(ell + 1)
    assert M.rank == ell + 1
    assert M.circuits_of_size(ell + 1) == list(C.members)
    if M.n <= 12:
        assert M.check_circuit_axioms()


@pytest.mark.parametrize("name", ["ceva", "pappus", "L8"])
def test_augmentation_axiom_of_the_candidate_independents(name):
    M = small_matroids()[name]
    ell = M.rank - 1
    C = {c for c in M.circuits if len(c) == ell + 1}
    fam = [frozenset(S) for k in range(ell + 2) for S in combinations(range(1, M.n + 1), k)
           if S not in C]
    fs = set(fam)
    for I in fam:
        for J in fam:
            if len(I) < len(J):
                assert any(I | {x} in fs for x in J - I)


@given(st.sets(st.sets(st.integers(1, 7), min_size=3, max_size=3).map(frozenset), max_size=6))
def test_round_trip_of_top_circuits(members):
    C = close_family(CircuitFamily(7, 3, members), 2)
    if len(C) == 35:
        return
    M = matroid_from_top_circuits(C, 2, 7)
    assert M.circuits_of_size(3) == list(C.members)
    assert M.rank == 3 and M.is_generic(2)
    assert M.check_circuit_axioms()


# oracles ---------------------------------------------------------------------------

def test_is_generic():
    assert uniform(3, 6).is_generic(2)
    assert not Matroid(3, [(1, 2)]).is_generic(2)


def test_rank_and_closure():
    M = small_matroids()["pappus"]
    assert M.rank_of([1, 4, 7]) == 2
    assert M.rank_of([1, 2, 4]) == 3
    assert M.closure(0b1001) == 0b1001001  # {1,4} spans the line {1,4,7}
    assert len(M.flats(2)) == 9 + (36 - 27)


@pytest.mark.parametrize("name", sorted(small_matroids()))
def test_circuit_axioms_on_small_corpus(name):
    assert small_matroids()[name].check_circuit_axioms()


def test_axiom_checker_catches_violations():
    assert not Matroid(4, [(1, 2), (1, 2, 3)]).check_circuit_axioms()
    assert not Matroid(4, [(1, 2, 3), (1, 2, 4)]).check_circuit_axioms()


# broken circuits and nbc ----------------------------------------------------------

def test_nbc_examples():
    U = uniform(3, 4)
    assert U.broken_circuits() == [(2, 3, 4)]
    assert U.nbc_sets(3) == [(1, 2, 3), (1, 2, 4), (1, 3, 4)]
    ceva = small_matroids()["ceva"]
    assert [len(ceva.nbc_sets(p)) for p in range(4)] == [1, 6, 11, 6]
    for M in small_matroids().values():
        assert M.nbc_sets(0) == [()]


def test_ceva_degree_two_count_from_flats():
    M = small_matroids()["ceva"]
    assert len(M.nbc_sets(2)) == sum(len(F) - 1 for F in M.flats(2))


@pytest.mark.parametrize("name", sorted(small_matroids()))
def test_nbc_counts_do_not_depend_on_order(name):
    M = small_matroids()[name]
    rng = random.Random(name)
    base = [len(M.nbc_sets(p)) for p in range(M.rank + 1)]
    for _ in range(5):
        order = list(range(1, M.n + 1))
        rng.shuffle(order)
        assert [len(M.nbc_sets(p, order)) for p in range(M.rank + 1)] == base
    assert M.nbc_sets(M.rank + 1) == []


def test_loops_refused_by_nbc():
    with pytest.raises(ValueError):
        Matroid(3, [(1,), (2, 3)]).nbc_sets(1)


# restriction, isomorphism, simplification ----------------------------------------

def test_restriction_to_subsquare_set_is_rank_two_uniform():
    K1 = NAMED_SQUARES["K1_order4"]
    J = subsquare(K1, [1, 3], [2, 4])
    assert J.X(4) == (1, 3, 6, 8, 10, 12)
    M = degenerate_with_subsquare(K1, J)
    assert M.restriction(J.X(4)) == uniform(2, 6)


def test_isomorphism_examples():
    M = small_matroids()["pappus"]
    iso = M.isomorphic(M)
    assert iso is not None
    assert {frozenset(iso[e] for e in c) for c in M.circuits} == {frozenset(c) for c in M.circuits}
    assert build_matroid(NAMED_SQUARES["K1_order4"]).isomorphic(build_matroid(NAMED_SQUARES["K2_order4"])) is None


@pytest.mark.parametrize("name", sorted(small_matroids()))
def test_isomorphism_recovers_relabelling(name):
    M = small_matroids()[name]
    N, _ = random_relabel(M, random.Random(7))
    iso = M.isomorphic(N)
    assert iso is not None
    assert Matroid(M.n, [[iso[e] for e in c] for c in M.circuits]) == N


def test_non_isomorphic_same_counts():
    # two triples sharing a point vs two disjoint-ish triples on 6 elements
    A = matroid_from_top_circuits(CircuitFamily(6, 3, [(1, 2, 3), (1, 4, 5)]), 2, 6)
    B = matroid_from_top_circuits(CircuitFamily(7, 3, [(1, 2, 3), (4, 5, 6)]), 2, 7)
    C = matroid_from_top_circuits(CircuitFamily(6, 3, [(1, 2, 3), (4, 5, 6)]), 2, 6)
    assert A.isomorphic(C) is None
    assert A.isomorphic(B) is None


def test_parallel_extension_and_simplification():
    M = parallel_extension(uniform(3, 4), [[1, 2], [3], [4], [5]])
    assert M.circuits_of_size(2) == [(1, 2)]
    assert M.check_circuit_axioms()
    S, reps = M.simplification()
    assert reps == [1, 3, 4, 5] and S == uniform(3, 4)


def test_json_round_trip():
    M = small_matroids()["L8"]
    d = json.loads(M.to_json())
    assert d["circuits"] == sorted(d["circuits"])
    assert Matroid.from_dict(d) == M
    with pytest.raises(ValueError):
        Matroid.from_dict({**d, "rank": 3})
    with pytest.raises(ValueError):
        Matroid.from_dict({"n": 3})


def test_cube_matroid_is_L8():
    M = build_matroid(cyclic_hypercube(3, 2))
    assert sorted("".join(map(str, c)) for c in M.circuits_of_size(4)) == sorted(
        ["1357", "2358", "2457", "1458", "1368", "2367", "2468", "1467"])
