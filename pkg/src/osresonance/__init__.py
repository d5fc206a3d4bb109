"""Orlik-Solomon algebras of matroids built from Latin squares, and the
cohomology of their Aomoto complexes over exact fields."""

from .exterior import ExteriorElement, boundary, wedge
from .latin import LatinHypercube, LatinSquare, build_matroid, build_matroid_mols, count_main_classes
from .matroid import CircuitFamily, Matroid, matroid_from_top_circuits
from .oscohomology import CohomologyReport, OSAlgebra, Weight, cohomology
from .realization import Configuration, catalog, underlying_matroid, verify
from .scalar import Cyclotomic

__all__ = [
    "CircuitFamily", "CohomologyReport", "Configuration", "Cyclotomic", "ExteriorElement",
    "LatinHypercube", "LatinSquare", "Matroid", "OSAlgebra", "Weight",
    "boundary", "build_matroid", "build_matroid_mols", "catalog", "cohomology",
    "count_main_classes", "matroid_from_top_circuits", "underlying_matroid", "verify", "wedge",
]
__version__ = "0.1.0"
