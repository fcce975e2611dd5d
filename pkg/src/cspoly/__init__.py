"""Exact construction of generalised classical polynomials of Calogero-Sutherland type."""

__version__ = "0.1.0"

from .coeffs import KAPPA, KPolynomial, KRational
from .fbasis import FExpansion, expand_in_f_basis, f_deformed, f_vector, g_partition, transition_matrix_K
from .model import AlphaBeta, ModelSpec, eigenvalue, eigenvalue_deformed, preset
from .operators import apply, build_deformed_reduced_operator, build_reduced_operator, membership_check
from .solver import EigenResult, choose_representation, representation_equivalent, solve_eigenfunction
from .symcore import BiSymmetricPoly, ExpandedPoly, SymmetricPoly

__all__ = [
    "KAPPA",
    "KPolynomial",
    "KRational",
    "AlphaBeta",
    "ModelSpec",
    "preset",
    "eigenvalue",
    "eigenvalue_deformed",
    "SymmetricPoly",
    "BiSymmetricPoly",
    "ExpandedPoly",
    "FExpansion",
    "f_vector",
    "f_deformed",
    "g_partition",
    "transition_matrix_K",
    "expand_in_f_basis",
    "build_reduced_operator",
    "build_deformed_reduced_operator",
    "apply",
    "membership_check",
    "EigenResult",
    "solve_eigenfunction",
    "choose_representation",
    "representation_equivalent",
]
