"""Complex ball arithmetic with exact rational centers and radii.

A :class:`Ball` is the closed disk ``{w : |w - center| <= radius}``.  When a
working precision is attached, centers are rounded to multiples of
``2**-prec`` after every operation and the rounding error is folded into the
radius, which keeps rationals small without giving up rigor.
"""

from __future__ import annotations

from fractions import Fraction

from ..exactcore.numbers import GaussRat, as_gauss, sqrt_lower, sqrt_upper

__all__ = ["Ball", "BallDivisionError", "ball", "hull"]


class BallDivisionError(ZeroDivisionError):
    """Division by a ball that contains zero."""


def _bits_for(x: Fraction) -> int:
    """Bits for a square root of ``x`` accurate to roughly 60 significant bits."""
    if not x:
        return 64
    mag = x.numerator.bit_length() - x.denominator.bit_length()
    return 64 + max(0, -mag // 2 + 2)


def _abs_upper(c: GaussRat) -> Fraction:
    if c.im == 0:
        return abs(c.re)
    if c.re == 0:
        return abs(c.im)
    a2 = c.abs2()
    return sqrt_upper(a2, _bits_for(a2))


def _abs_lower(c: GaussRat) -> Fraction:
    if c.im == 0:
        return abs(c.re)
    if c.re == 0:
        return abs(c.im)
    a2 = c.abs2()
    return sqrt_lower(a2, _bits_for(a2))


def _round_dyadic(x: Fraction, prec: int):
    """Nearest multiple of 2**-prec and the absolute error."""
    if x.denominator <= (1 << prec) and (1 << prec) % x.denominator == 0:
        return x, Fraction(0)
    scaled = x * (1 << prec)
    n = round(scaled)
    y = Fraction(n, 1 << prec)
    return y, abs(x - y)


def _round_radius_up(r: Fraction, prec: int) -> Fraction:
    """Upper dyadic approximation of ``r`` with granularity 2**-(prec + 8)."""
    g = prec + 8
    if r.denominator <= (1 << g) and (1 << g) % r.denominator == 0:
        return r
    n = -((-r.numerator << g) // r.denominator)
    return Fraction(n, 1 << g)


class Ball:
    __slots__ = ("center", "radius", "prec")

    def __init__(self, center, radius=0, prec=None):
        self.center = as_gauss(center) if not isinstance(center, GaussRat) else center
        radius = Fraction(radius)
        if radius < 0:
            raise ValueError("negative radius")
        self.radius = radius
        self.prec = prec
        if prec is not None:
            self._round()

    def _round(self):
        p = self.prec
        re, e1 = _round_dyadic(self.center.re, p)
        im, e2 = _round_dyadic(self.center.im, p)
        if e1 or e2:
            self.center = GaussRat(re, im)
            self.radius += e1 + e2
        self.radius = _round_radius_up(self.radius, p)

    @staticmethod
    def _mk(center, radius, prec):
        b = Ball.__new__(Ball)
        b.center = center
        b.radius = radius
        b.prec = prec
        if prec is not None:
            b._round()
        return b

    # -- queries ------------------------------------------------------------------
    def is_exact(self) -> bool:
        return self.radius == 0

    def is_real(self) -> bool:
        return self.center.im == 0

    def contains_zero(self) -> bool:
        return self.center.abs2() <= self.radius * self.radius

    def contains(self, w) -> bool:
        w = as_gauss(w)
        return (self.center - w).abs2() <= self.radius * self.radius

    def abs_upper(self) -> Fraction:
        return _abs_upper(self.center) + self.radius

    def abs_lower(self) -> Fraction:
        v = _abs_lower(self.center) - self.radius
        return v if v > 0 else Fraction(0)

    def overlaps(self, other: "Ball") -> bool:
        s = self.radius + other.radius
        return (self.center - other.center).abs2() <= s * s

    def inside(self, other: "Ball", strict: bool = False) -> bool:
        """True if this disk lies in ``other`` (in its interior with ``strict``)."""
        d = _abs_upper(self.center - other.center) + self.radius
        return d < other.radius if strict else d <= other.radius

    def distance_lower(self, other: "Ball") -> Fraction:
        """Lower bound on the distance between points of the two disks."""
        v = _abs_lower(self.center - other.center) - self.radius - other.radius
        return v if v > 0 else Fraction(0)

    def box(self, real: bool = False):
        """Axis-aligned box ``(re_lo, re_hi, im_lo, im_hi)`` enclosing the disk."""
        c, r = self.center, self.radius
        if real:
            return (c.re - r, c.re + r, Fraction(0), Fraction(0))
        return (c.re - r, c.re + r, c.im - r, c.im + r)

    def with_prec(self, prec):
        return Ball._mk(self.center, self.radius, prec)

    def widen(self, extra) -> "Ball":
        return Ball._mk(self.center, self.radius + Fraction(extra), self.prec)

    # -- arithmetic -----------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Ball):
            return other
        if isinstance(other, (int, Fraction, GaussRat)):
            return Ball._mk(as_gauss(other), Fraction(0), None)
        return None

    def _p(self, other):
        a, b = self.prec, other.prec
        if a is None:
            return b
        if b is None:
            return a
        return max(a, b)

    def __neg__(self):
        return Ball._mk(-self.center, self.radius, None if self.prec is None else self.prec)

    def __pos__(self):
        return self

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Ball._mk(self.center + o.center, self.radius + o.radius, self._p(o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Ball._mk(self.center - o.center, self.radius + o.radius, self._p(o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Ball._mk(self.center * other, self.radius * abs(Fraction(other)), self.prec)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c = self.center * o.center
        r = Fraction(0)
        if o.radius:
            r += _abs_upper(self.center) * o.radius
        if self.radius:
            r += _abs_upper(o.center) * self.radius + self.radius * o.radius
        return Ball._mk(c, r, self._p(o))

    __rmul__ = __mul__

    def inverse(self):
        if self.radius == 0:
            if not self.center:
                raise BallDivisionError("inverse of exact zero")
            return Ball._mk(self.center.inverse(), Fraction(0), self.prec)
        lo = _abs_lower(self.center) - self.radius
        if lo <= 0:
            raise BallDivisionError("inverse of a ball containing zero")
        c = self.center.inverse()
        # |1/w - 1/c| = |w - c| / (|w||c|) <= r / ((|c| - r)|c|)
        r = self.radius / (lo * (lo + self.radius))
        return Ball._mk(c, r, self.prec)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise BallDivisionError("division by zero")
            return Ball._mk(self.center / other, self.radius / abs(Fraction(other)), self.prec)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = Ball._mk(GaussRat(1), Fraction(0), self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def conjugate(self):
        return Ball._mk(self.center.conjugate(), self.radius, self.prec)

    def __repr__(self):
        return f"Ball({self.center}, {self.radius})"

    def __eq__(self, other):
        return (isinstance(other, Ball) and self.center == other.center
                and self.radius == other.radius)

    def __hash__(self):
        return hash((self.center, self.radius))


def ball(x, radius=0, prec=None) -> Ball:
    if isinstance(x, Ball):
        return x
    return Ball(x, radius, prec)


def hull(a: Ball, b: Ball) -> Ball:
    """A disk containing both ``a`` and ``b``."""
    c = GaussRat((a.center.re + b.center.re) / 2, (a.center.im + b.center.im) / 2)
    r = max(_abs_upper(a.center - c) + a.radius, _abs_upper(b.center - c) + b.radius)
    return Ball(c, r)
