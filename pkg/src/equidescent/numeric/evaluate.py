"""Ball evaluation of polynomials, rational functions and tower elements."""

from __future__ import annotations

from fractions import Fraction

from ..exactcore.numbers import GaussRat
from .ball import Ball

__all__ = ["horner", "eval_mpoly", "eval_ratfunc", "eval_tower", "coefficient_balls", "to_ball"]


def to_ball(x, prec=None) -> Ball:
    if isinstance(x, Ball):
        return x if prec is None or x.prec == prec else x.with_prec(prec)
    return Ball(x, 0, prec)


def horner(coeffs, x):
    """Evaluate an ascending coefficient list (rationals or balls) at ``x``."""
    if not coeffs:
        return Ball(0)
    acc = to_ball(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


def eval_mpoly(p, values, prec=None):
    """Ball value of an MPoly with rational coefficients at ball arguments."""
    vals = [to_ball(v, prec) for v in values]
    if not p.terms:
        return Ball(0, 0, prec)
    v = p.evaluate(vals)
    return to_ball(v, prec)


def eval_ratfunc(rf, values, prec=None) -> Ball:
    num = eval_mpoly(rf.num, values, prec)
    if rf.den.is_constant():
        return num
    den = eval_mpoly(rf.den, values, prec)
    return num / den


def eval_tower(a, tvalues, zvalue, prec=None) -> Ball:
    """Ball value of a tower element with t and z replaced by balls."""
    z = to_ball(zvalue, prec)
    coeffs = [eval_ratfunc(c, tvalues, prec) if c else None for c in a.coeffs]
    acc = Ball(0, 0, prec)
    for c in reversed(coeffs):
        acc = acc * z
        if c is not None:
            acc = acc + c
    return acc


def coefficient_balls(P, tvalues, prec=None):
    """Ascending ball coefficients of ``P(t, z)`` at ball values of ``t``."""
    return [eval_ratfunc(c, tvalues, prec) if c else Ball(0) for c in P]


def exact_point_value(rf, point):
    """Exact value of a rational function at a rational or Gaussian-rational point.

    Returns None at a pole.
    """
    den = rf.den.evaluate(point) if not rf.den.is_constant() else Fraction(1)
    if not den:
        return None
    num = rf.num.evaluate(point)
    if rf.den.is_constant():
        return num
    if isinstance(num, GaussRat) or isinstance(den, GaussRat):
        return GaussRat(num) / den if not isinstance(num, GaussRat) else num / den
    return Fraction(num) / Fraction(den)
