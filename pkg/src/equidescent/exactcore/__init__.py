"""Exact arithmetic: rationals, Gaussian rationals, polynomials, gcds, determinants."""

from .numbers import GQQ, QQ, Fraction, GaussRat, fmt_rat, parse_rat
from .mpoly import MPoly, grlex_key, lex_key
from .gcd import mv_gcd, normalize_associate
from .det import cofactor_det, ff_det
from .resultant import resultant, resultant_coeffs
from .ratfunc import RatFunc, RatFuncField, rf_normalize
from .text import parse_expr

__all__ = [
    "Fraction", "GaussRat", "QQ", "GQQ", "parse_rat", "fmt_rat", "MPoly", "grlex_key",
    "lex_key", "mv_gcd", "normalize_associate", "ff_det", "cofactor_det", "resultant",
    "resultant_coeffs", "RatFunc", "RatFuncField", "rf_normalize", "parse_expr",
]
