"""Exact computations with finite p-groups of matrices over cyclotomic fields and Z."""

__version__ = "0.1.0"

from .cyclotomic import CycContext, CycNumber, get_context, multiplicative_order, root_of_unity
from .groups import FiniteGroup, Subgroup, closure, frattini, min_generators, min_generators_bruteforce
from .lattice import IntMatrix, int_closure, invariant_sublattice, is_cyclic
from .matrices import CycMatrix, eigen_decompose, element_order
from .projective import Polynomial, ProjElement, fixed_subspaces, orbit, pgl_image, semi_invariant

__all__ = [
    "CycContext",
    "CycMatrix",
    "CycNumber",
    "FiniteGroup",
    "IntMatrix",
    "Polynomial",
    "ProjElement",
    "Subgroup",
    "closure",
    "eigen_decompose",
    "element_order",
    "fixed_subspaces",
    "frattini",
    "get_context",
    "int_closure",
    "invariant_sublattice",
    "is_cyclic",
    "min_generators",
    "min_generators_bruteforce",
    "multiplicative_order",
    "orbit",
    "pgl_image",
    "root_of_unity",
    "semi_invariant",
]
