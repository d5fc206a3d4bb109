"""Shared corpus of squares, hypercubes and matroids, plus hypothesis strategies."""
from fractions import Fraction
from functools import lru_cache
from itertools import product

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from osresonance.latin import (
    LatinHypercube,
    build_matroid,
    cyclic_hypercube,
    main_class_representatives,
)
from osresonance.matroid import CircuitFamily, Matroid, matroid_from_top_circuits, parallel_extension, uniform
from osresonance.realization import NAMED_SQUARES, b3_simple_target, higher_b_matroid

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def klein_cube(m: int = 4) -> LatinHypercube:
    """Order-4 cube from the Klein group: k = 1 + (i xor j xor l)."""
    cells = [1 + (i ^ j ^ k) for i, j, k in product(range(m), repeat=3)]
    return LatinHypercube(3, m, tuple(cells))


def skew_cube(m: int = 3) -> LatinHypercube:
    cells = [1 + (i + 2 * j + k) % m for i, j, k in product(range(m), repeat=3)]
    return LatinHypercube(3, m, tuple(cells))


@lru_cache(maxsize=None)
def corpus_squares() -> tuple:
    out = []
    for m in (2, 3, 4):
        out.extend(main_class_representatives(m))
    out.extend([NAMED_SQUARES["K1_order4"], NAMED_SQUARES["K2_order4"],
                NAMED_SQUARES["K1_order3"], NAMED_SQUARES["K2_order3"]])
    return tuple(out)


@lru_cache(maxsize=None)
def corpus_cubes() -> tuple:
    return (cyclic_hypercube(3, 2), cyclic_hypercube(3, 3), skew_cube(3),
            cyclic_hypercube(3, 4), klein_cube(4))


@lru_cache(maxsize=None)
def small_matroids() -> dict[str, Matroid]:
    """Matroids on at most 9 elements."""
    return {
        "U(2,3)": uniform(2, 3),
        "U(3,4)": uniform(3, 4),
        "U(3,5)": uniform(3, 5),
        "U(2,5)": uniform(2, 5),
        "one-triple": matroid_from_top_circuits(CircuitFamily(5, 3, [(1, 2, 3)]), 2, 5),
        "parallel": parallel_extension(uniform(3, 4), [[1, 2], [3], [4], [5]]),
        "ceva": build_matroid(NAMED_SQUARES["K_order2"]),
        "pappus": build_matroid(NAMED_SQUARES["K1_order3"]),
        "L8": build_matroid(cyclic_hypercube(3, 2)),
        "higher-B": higher_b_matroid(),
        "B3": b3_simple_target(),
    }


fractions = st.fractions(min_value=-6, max_value=6, max_denominator=5)
nonzero_fractions = fractions.filter(bool)


@st.composite
def zero_sum_blocks(draw, blocks: int):
    """Block values summing to zero, not all zero."""
    vals = draw(st.lists(fractions, min_size=blocks - 1, max_size=blocks - 1))
    last = -sum(vals, Fraction(0))
    vals.append(last)
    if not any(vals):
        vals[0], vals[-1] = Fraction(1), Fraction(-1)
    return vals


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, detail = RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
