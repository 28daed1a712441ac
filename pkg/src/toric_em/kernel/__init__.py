"""Exact arithmetic kernel: rationals, y-polynomials, sparse series, roots of unity."""

from .linalg import smith_normal_form
from .poly import (
    LaurentPoly,
    Poly,
    TruncSeries,
    UniLaurentSeries,
    bernoulli_todd_coeffs,
    compose_linear,
    exp_coeffs,
    monomials_of_degree,
    monomials_upto,
    series_exp,
    uni_exp,
)
from .substitute import generic_direction, laurent_substitute
from .roots import RootOfUnity, numeric_context
from .ypoly import YPoly, as_ypoly, specialize

__all__ = [
    "LaurentPoly",
    "Poly",
    "RootOfUnity",
    "TruncSeries",
    "UniLaurentSeries",
    "YPoly",
    "as_ypoly",
    "bernoulli_todd_coeffs",
    "compose_linear",
    "exp_coeffs",
    "generic_direction",
    "laurent_substitute",
    "monomials_of_degree",
    "monomials_upto",
    "numeric_context",
    "series_exp",
    "smith_normal_form",
    "specialize",
    "uni_exp",
]
