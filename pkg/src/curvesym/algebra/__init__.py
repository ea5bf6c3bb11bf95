"""Exact polynomial kernel: rationals, polynomials, gcds, factoring, real roots, number fields."""

from .bipoly import BiPoly, poly_gcd_bi
from .factor import factor_rationals, squarefree_part
from .field import FieldElem, NumberField, field_eval
from .roots import AlgebraicNumber, isolate_real_roots
from .unipoly import RatFunc, UniPoly, poly_gcd_uni

__all__ = [
    "AlgebraicNumber", "BiPoly", "FieldElem", "NumberField", "RatFunc", "UniPoly",
    "factor_rationals", "field_eval", "isolate_real_roots", "poly_gcd_bi", "poly_gcd_uni",
    "squarefree_part",
]
