"""Exact genus-zero mirror-symmetry checks for invertible polynomials."""

from .amodel import fjrw_four_point, four_point_report
from .bmodel import good_basis_check, perturbative_expand, sg_four_point
from .jacobi import JacobiRing
from .poly import (
    AtomicSummand,
    InvertiblePolynomial,
    NotInvertibleShape,
    PolynomialSyntaxError,
)

__all__ = [
    "AtomicSummand",
    "InvertiblePolynomial",
    "JacobiRing",
    "NotInvertibleShape",
    "PolynomialSyntaxError",
    "fjrw_four_point",
    "four_point_report",
    "good_basis_check",
    "perturbative_expand",
    "sg_four_point",
]

__version__ = "0.1.0"
