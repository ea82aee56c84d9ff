"""Dense univariate polynomials over a field, as ascending coefficient lists.

The zero polynomial is ``[]``.  Coefficients only need field arithmetic and
``bool``; the same helpers serve Q, Q(i), Q(t) and tower coefficients.
"""

from __future__ import annotations

__all__ = [
    "up_trim", "up_deg", "up_add", "up_sub", "up_neg", "up_scale", "up_mul", "up_divmod",
    "up_rem", "up_monic", "up_gcd", "up_xgcd", "up_deriv", "up_eval", "up_pow_mod",
    "up_mul_mod", "up_str",
]


def up_trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def up_deg(a) -> int:
    return len(a) - 1


def up_add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return up_trim(out)


def up_neg(a):
    return [-c for c in a]


def up_sub(a, b):
    return up_add(a, up_neg(b))


def up_scale(a, c):
    if not c:
        return []
    return up_trim([x * c for x in a])


def up_mul(a, b):
    if not a or not b:
        return []
    out = [None] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            p = x * y
            k = i + j
            out[k] = p if out[k] is None else out[k] + p
    zero = a[0] * 0
    return up_trim([zero if c is None else c for c in out])


def up_divmod(a, b):
    """Quotient and remainder of ``a`` by nonzero ``b`` over a field."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], up_trim(a)
    inv = 1 / b[-1] if not hasattr(b[-1], "inverse") else b[-1].inverse()
    q = [None] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if not c:
            q[k - db] = c
            continue
        c = c * inv
        q[k - db] = c
        for i in range(db):
            a[k - db + i] = a[k - db + i] - c * b[i]
        a[k] = c * 0
    return up_trim(q), up_trim(a[:db])


def up_rem(a, b):
    return up_divmod(a, b)[1]


def up_monic(a):
    if not a or a[-1] == 1:
        return list(a)
    inv = 1 / a[-1] if not hasattr(a[-1], "inverse") else a[-1].inverse()
    return [c * inv for c in a[:-1]] + [a[-1] * inv]


def up_gcd(a, b):
    """Monic gcd (``[]`` when both vanish)."""
    a, b = up_trim(a), up_trim(b)
    while b:
        a, b = b, up_rem(a, b)
    return up_monic(a)


def up_xgcd(a, b):
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    a, b = up_trim(a), up_trim(b)
    one = (a or b)[0] ** 0 if (a or b) else 1
    r0, r1 = a, b
    s0, s1 = [one], []
    t0, t1 = [], [one]
    while r1:
        q, r = up_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, up_sub(s0, up_mul(q, s1))
        t0, t1 = t1, up_sub(t0, up_mul(q, t1))
    if not r0:
        return [], s0, t0
    lc = r0[-1]
    inv = 1 / lc if not hasattr(lc, "inverse") else lc.inverse()
    return up_scale(r0, inv), up_scale(s0, inv), up_scale(t0, inv)


def up_deriv(a):
    return up_trim([a[k] * k for k in range(1, len(a))])


def up_eval(a, x):
    """Horner evaluation; ``x`` may be any ring-like value (ball, rational...)."""
    if not a:
        return 0
    acc = a[-1]
    for c in reversed(a[:-1]):
        acc = acc * x + c
    return acc


def up_mul_mod(a, b, m):
    return up_rem(up_mul(a, b), m)


def up_pow_mod(a, n: int, m):
    one = up_rem([a[0] ** 0] if a else [1], m)
    result = one
    base = up_rem(a, m)
    while n:
        if n & 1:
            result = up_mul_mod(result, base, m)
        n >>= 1
        if n:
            base = up_mul_mod(base, base, m)
    return result


def up_str(a, var="z"):
    """Descending-degree text such as ``z^2 - 157/50``."""
    from .mpoly import MPoly
    from .numbers import GQQ, QQ, GaussRat

    domain = GQQ if any(isinstance(c, GaussRat) for c in a) else QQ
    p = MPoly(1, {(k,): c for k, c in enumerate(a) if c}, domain)
    return p.to_str([var])
