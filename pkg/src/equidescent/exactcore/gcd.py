"""Multivariate gcd over Q by content/primitive-part recursion.

The top variable is eliminated with a primitive pseudo-remainder sequence;
contents are handled recursively in the remaining variables.  This is slow in
theory and perfectly adequate for a handful of variables of moderate degree.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd as igcd, lcm as ilcm

from .mpoly import MPoly

__all__ = ["mv_gcd", "normalize_associate", "primitive_part", "content_in", "prem", "mv_lcm",
           "is_squarefree_in"]


def normalize_associate(f: MPoly) -> MPoly:
    """Scale ``f`` to integer coefficients with gcd 1 and positive grlex leading coefficient."""
    if not f:
        return f
    den = 1
    num = 0
    for c in f.terms.values():
        den = ilcm(den, c.denominator)
    for c in f.terms.values():
        num = igcd(num, (c * den).numerator)
    scale = Fraction(den, num)
    if f.leading_coefficient() < 0:
        scale = -scale
    if scale == 1:
        return f
    return f.scale(scale)


def _gen_power(nvars, var, k):
    e = [0] * nvars
    e[var] = k
    return tuple(e)


def prem(a: MPoly, b: MPoly, var: int) -> MPoly:
    """Pseudo-remainder of ``a`` by ``b`` in ``var``."""
    db = b.degree(var)
    lcb = b.coeff_in(var, db)
    while a and a.degree(var) >= db:
        da = a.degree(var)
        lca = a.coeff_in(var, da)
        shifted = b.mul_monomial(_gen_power(a.nvars, var, da - db), Fraction(1))
        a = lcb * a - lca * shifted
    return a


def content_in(f: MPoly, var: int) -> MPoly:
    """Gcd of the coefficients of ``f`` viewed as a polynomial in ``var``."""
    coeffs = sorted(f.coeffs_in(var).values(), key=len)
    g = coeffs[0]
    for c in coeffs[1:]:
        if g.is_constant():
            break
        g = mv_gcd(g, c)
    return normalize_associate(g)


def primitive_part(f: MPoly, var: int) -> MPoly:
    if not f:
        return f
    c = content_in(f, var)
    if not c.is_constant():
        f = f.exquo(c)
    return normalize_associate(f)


def mv_gcd(a: MPoly, b: MPoly) -> MPoly:
    """Normalized gcd of two polynomials over Q; ``gcd(0, 0) = 0``."""
    if a.nvars != b.nvars:
        raise ValueError("variable count mismatch")
    if not a:
        return normalize_associate(b)
    if not b:
        return normalize_associate(a)
    one = MPoly.constant(a.nvars, 1)
    if a.is_constant() or b.is_constant():
        return one
    va, vb = set(a.variables()), set(b.variables())
    v = max(va | vb)
    if v not in va:
        return mv_gcd(a, content_in(b, v))
    if v not in vb:
        return mv_gcd(content_in(a, v), b)
    ca, cb = content_in(a, v), content_in(b, v)
    c = mv_gcd(ca, cb)
    pa = normalize_associate(a.exquo(ca)) if not ca.is_constant() else normalize_associate(a)
    pb = normalize_associate(b.exquo(cb)) if not cb.is_constant() else normalize_associate(b)
    if pa.degree(v) < pb.degree(v):
        pa, pb = pb, pa
    while True:
        r = prem(pa, pb, v)
        if not r:
            g = pb
            break
        if r.degree(v) == 0:
            g = one
            break
        pa, pb = pb, primitive_part(r, v)
    return normalize_associate(c * g)


def mv_lcm(a: MPoly, b: MPoly) -> MPoly:
    if not a or not b:
        return MPoly.zero(a.nvars)
    return normalize_associate((a * b).exquo(mv_gcd(a, b)))


def is_squarefree_in(f: MPoly, var: int) -> bool:
    """True if ``f`` has no repeated factor involving ``var``."""
    g = mv_gcd(f, f.diff(var))
    return g.degree(var) <= 0


def gcd_list(polys):
    return reduce(mv_gcd, polys)
