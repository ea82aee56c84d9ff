"""Exact determinants: Bareiss elimination and a cofactor-expansion reference."""

from __future__ import annotations

from .mpoly import MPoly

__all__ = ["ff_det", "cofactor_det", "exact_div"]


def exact_div(a, b):
    """Divide where the quotient is known to be exact in the ring of ``a``."""
    if isinstance(a, MPoly):
        return a.exquo(b)
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ValueError("inexact integer division")
        return q
    return a / b


def ff_det(m):
    """Determinant by fraction-free (Bareiss) elimination with row pivoting.

    Entries may be ints, Fractions, polynomials or any field element; only
    exact divisions that Sylvester's identity guarantees are performed.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    if n == 0:
        return 1
    a = [list(row) for row in m]
    if n == 1:
        return a[0][0]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return a[k][k] * 0
        piv = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                v = row_i[j] * piv - aik * row_k[j]
                row_i[j] = v if prev is None else exact_div(v, prev)
            row_i[k] = aik * 0
        prev = piv
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def cofactor_det(m):
    """Laplace expansion along the first row; exponential, for cross-checks."""
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = None
    for j in range(n):
        if not m[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * cofactor_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return m[0][0] * 0
    return total
