"""Generalized discriminants from Newton power sums and Hankel determinants.

For a monic ``f = x^d + b1 x^(d-1) + ... + bd`` with power sums ``s_i`` of its
roots, ``Delta_{d+1-l}`` is the determinant of the l x l Hankel matrix
``(s_{i+j})``.  ``f`` has exactly ``k`` distinct roots iff the first ``d - k``
of ``Delta_1, Delta_2, ...`` vanish and the next one does not.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotMonic
from .exactcore.det import ff_det
from .exactcore.mpoly import MPoly

__all__ = [
    "DiscriminantSequence",
    "newton_power_sums",
    "hankel_discriminant",
    "generalized_discriminants",
    "first_nonvanishing",
    "distinct_root_count",
    "monic_coeffs",
]


@dataclass(frozen=True)
class DiscriminantSequence:
    degree: int
    values: tuple
    first_nonzero: int

    def __str__(self):
        vals = ", ".join(str(v) for v in self.values)
        return f"({vals}), l = {self.first_nonzero}"


def newton_power_sums(b, m: int):
    """Power sums ``s_0..s_m`` of the roots of ``x^d + b[0] x^(d-1) + ... + b[d-1]``.

    Works over any commutative ring containing Q; no division is performed
    beyond multiplication by integers.
    """
    d = len(b)
    if d == 0:
        raise ValueError("need degree at least 1")
    zero = b[0] * 0
    s = [zero + d]
    for k in range(1, m + 1):
        acc = zero
        for i in range(1, min(k - 1, d) + 1):
            acc = acc + b[i - 1] * s[k - i]
        if k <= d:
            acc = acc + b[k - 1] * k
        s.append(-acc)
    return s


def hankel_discriminant(s, l: int):
    """Determinant of the l x l Hankel matrix of ``s_0..s_{2l-2}``, i.e. Delta_{d+1-l}."""
    return ff_det([[s[i + j] for j in range(l)] for i in range(l)])


def monic_coeffs(f, var: int = None):
    """``[b1, ..., bd]`` for ``f`` monic in ``var``.

    ``f`` is either an MPoly (coefficients become MPolys free of ``var``) or an
    ascending coefficient list.
    """
    if isinstance(f, MPoly):
        if var is None:
            var = f.nvars - 1
        d = f.degree(var)
        if d < 1:
            raise ValueError("degree must be at least 1")
        cs = f.coeffs_in(var)
        lc = cs[d]
        if not (lc.is_constant() and lc.constant_value() == 1):
            raise NotMonic("polynomial is not monic in the selected variable")
        zero = MPoly.zero(f.nvars, f.domain)
        return [cs.get(d - i, zero) for i in range(1, d + 1)]
    c = list(f)
    while c and not c[-1]:
        c.pop()
    if len(c) < 2:
        raise ValueError("degree must be at least 1")
    if c[-1] != 1:
        raise NotMonic("polynomial is not monic")
    d = len(c) - 1
    return [c[d - i] for i in range(1, d + 1)]


def generalized_discriminants(f, var: int = None, lazy: bool = False) -> DiscriminantSequence:
    """All of Delta_1..Delta_d (or, with ``lazy``, only up to the first nonzero one).

    Delta_l for increasing l uses Hankel matrices of decreasing size, so the lazy
    form computes the big determinants first; it still stops as soon as the
    first nonvanishing index is known.
    """
    b = monic_coeffs(f, var)
    d = len(b)
    s = newton_power_sums(b, 2 * d - 2)
    values = []
    first = None
    for idx in range(1, d + 1):
        size = d + 1 - idx
        v = hankel_discriminant(s, size)
        values.append(v)
        if first is None and v:
            first = idx
            if lazy:
                break
    if first is None:
        # Delta_d = s_0 = d is never zero over a ring containing Q
        raise ArithmeticError("all generalized discriminants vanished")
    return DiscriminantSequence(d, tuple(values), first)


def first_nonvanishing(f, var: int = None):
    """``(l, Delta_l)`` for the first nonvanishing generalized discriminant."""
    seq = generalized_discriminants(f, var, lazy=True)
    return seq.first_nonzero, seq.values[seq.first_nonzero - 1]


def distinct_root_count(f, var: int = None) -> int:
    seq = generalized_discriminants(f, var, lazy=True)
    return seq.degree - seq.first_nonzero + 1
