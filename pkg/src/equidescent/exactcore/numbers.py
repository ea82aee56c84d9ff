"""Rationals, Gaussian rationals and the coefficient-domain protocol.

Rationals are :class:`fractions.Fraction`.  A *domain* is a small object
exposing ``zero``, ``one`` and ``convert``; polynomial containers use it to
build constants when they have no terms to copy a coefficient type from.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import isqrt

__all__ = [
    "Fraction",
    "GaussRat",
    "QQ",
    "GQQ",
    "parse_rat",
    "fmt_rat",
    "sqrt_upper",
    "sqrt_lower",
    "as_gauss",
]

_RAT_RE = re.compile(r"\s*([+-]?\d+(?:\.\d+)?)(?:\s*/\s*(\d+))?\s*$")


def parse_rat(text) -> Fraction:
    """Parse ``"a"``, ``"a/b"`` or an exact decimal ``"1.25"`` into a Fraction.

    Floats are rejected outright: they are not exact.
    """
    if isinstance(text, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise ValueError(f"expected a rational string, got {type(text).__name__}")
    m = _RAT_RE.match(text)
    if not m:
        raise ValueError(f"not an exact rational: {text!r}")
    value = Fraction(m.group(1))
    if m.group(2) is not None:
        den = int(m.group(2))
        if den == 0:
            raise ZeroDivisionError(f"zero denominator in {text!r}")
        value /= den
    return value


def fmt_rat(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def sqrt_upper(x: Fraction, bits: int = 64) -> Fraction:
    """A dyadic rational >= sqrt(x)."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("negative argument")
    if x == 0:
        return Fraction(0)
    scale = 4 ** bits
    n = -((-x.numerator * scale) // x.denominator)  # ceil
    r = isqrt(n)
    if r * r < n:
        r += 1
    return Fraction(r, 2 ** bits)


def sqrt_lower(x: Fraction, bits: int = 64) -> Fraction:
    """A dyadic rational <= sqrt(x)."""
    x = Fraction(x)
    if x <= 0:
        return Fraction(0)
    n = (x.numerator * 4 ** bits) // x.denominator
    return Fraction(isqrt(n), 2 ** bits)


class GaussRat:
    """An element ``re + im*i`` of Q(i) with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @staticmethod
    def _lift(other):
        if isinstance(other, GaussRat):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussRat(other, 0)
        return NotImplemented

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussRat({fmt_rat(self.re)}, {fmt_rat(self.im)})"

    def __str__(self):
        if self.im == 0:
            return fmt_rat(self.re)
        if self.re == 0:
            return f"({fmt_rat(self.im)}*I)"
        sign = "-" if self.im < 0 else "+"
        return f"({fmt_rat(self.re)} {sign} {fmt_rat(abs(self.im))}*I)"

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussRat(self.re * other, self.im * other)
        if not isinstance(other, GaussRat):
            return NotImplemented
        if other.im == 0:
            return GaussRat(self.re * other.re, self.im * other.re)
        if self.im == 0:
            return GaussRat(self.re * other.re, self.re * other.im)
        return GaussRat(self.re * other.re - self.im * other.im,
                        self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def conjugate(self):
        return GaussRat(self.re, -self.im)

    def inverse(self):
        n = self.abs2()
        if n == 0:
            raise ZeroDivisionError("GaussRat division by zero")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("GaussRat division by zero")
            return GaussRat(self.re / other, self.im / other)
        if not isinstance(other, GaussRat):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = GaussRat(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def abs_upper(self) -> Fraction:
        if self.im == 0:
            return abs(self.re)
        if self.re == 0:
            return abs(self.im)
        return sqrt_upper(self.abs2())

    def abs_lower(self) -> Fraction:
        if self.im == 0:
            return abs(self.re)
        if self.re == 0:
            return abs(self.im)
        return sqrt_lower(self.abs2())


def as_gauss(x) -> GaussRat:
    if isinstance(x, GaussRat):
        return x
    return GaussRat(x, 0)


class _Rationals:
    """The field Q with Fraction elements."""

    zero = Fraction(0)
    one = Fraction(1)
    is_field = True

    def convert(self, x):
        return x if type(x) is Fraction else Fraction(x)

    def __repr__(self):
        return "QQ"


class _GaussianRationals:
    """The field Q(i) with GaussRat elements."""

    zero = GaussRat(0)
    one = GaussRat(1)
    is_field = True

    def convert(self, x):
        return as_gauss(x)

    def __repr__(self):
        return "GQQ"


QQ = _Rationals()
GQQ = _GaussianRationals()
