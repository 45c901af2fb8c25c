"""Exact computations with free generalized vertex algebras and generalized
principal subspaces of lattice vertex algebras."""

from .exactnum import CyclotomicField, Scalar
from .lattice import Lattice, builtin_lattice, load_lattice
from .fock import FockSpace, FockVector
from .freegva import FreeElement, evaluate_fock, straighten
from .combinatorics import QSeries, character, check_extraction, enumerate_basis, verify_character
from .duality import check_commutant_corollary, check_duality, generator_kernel
from .presentation import check_presentation_relations

__all__ = [
    "CyclotomicField",
    "FockSpace",
    "FockVector",
    "FreeElement",
    "Lattice",
    "QSeries",
    "Scalar",
    "builtin_lattice",
    "character",
    "check_commutant_corollary",
    "check_duality",
    "check_extraction",
    "check_presentation_relations",
    "enumerate_basis",
    "evaluate_fock",
    "generator_kernel",
    "load_lattice",
    "straighten",
    "verify_character",
]
__version__ = "0.1.0"
