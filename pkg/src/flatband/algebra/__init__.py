"""Exact arithmetic: rationals, Q[x], number fields, Laurent polynomials, linear algebra."""
from .laurent import LaurentPoly
from .matrix import PolyMatrix, determinant, fraction_field_rank
from .numberfield import AlgebraicScalar, NumberField
from .unipoly import UniPoly, factor_rational, univariate_gcd

__all__ = [
    "AlgebraicScalar",
    "LaurentPoly",
    "NumberField",
    "PolyMatrix",
    "UniPoly",
    "determinant",
    "factor_rational",
    "fraction_field_rank",
    "univariate_gcd",
]
