"""Sylvester resultants."""

from __future__ import annotations

from .det import ff_det
from .mpoly import MPoly

__all__ = ["resultant", "resultant_coeffs", "sylvester_matrix"]


def sylvester_matrix(f, g, zero):
    """Sylvester matrix of two coefficient lists given in ascending degree."""
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    fd = list(reversed(f))
    gd = list(reversed(g))
    for i in range(n):
        rows.append([zero] * i + fd + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + gd + [zero] * (size - n - 1 - i))
    return rows


def resultant_coeffs(f, g, zero, one):
    """Resultant of two dense univariate polynomials (ascending coefficient lists)."""
    f = _trim(f)
    g = _trim(g)
    if not f and not g:
        raise ValueError("resultant of two zero polynomials")
    if not f or not g:
        return zero
    m, n = len(f) - 1, len(g) - 1
    if m == 0:
        return f[0] ** n if n else one
    if n == 0:
        return g[0] ** m
    return ff_det(sylvester_matrix(f, g, zero))


def _trim(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return c


def resultant(f: MPoly, g: MPoly, var: int) -> MPoly:
    """Res_var(f, g) as a polynomial in the remaining variables (same variable count)."""
    if not f and not g:
        raise ValueError("resultant of two zero polynomials")
    zero = MPoly.zero(f.nvars, f.domain)
    one = MPoly.constant(f.nvars, f.domain.one, f.domain)
    if not f or not g:
        return zero
    fc = f.coeffs_in(var)
    gc = g.coeffs_in(var)
    fl = [fc.get(k, zero) for k in range(f.degree(var) + 1)]
    gl = [gc.get(k, zero) for k in range(g.degree(var) + 1)]
    return resultant_coeffs(fl, gl, zero, one)
