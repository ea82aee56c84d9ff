"""Rational functions in t1..tr over Q in canonical form."""

from __future__ import annotations

from fractions import Fraction

from ..errors import ZeroDenominator
from .gcd import mv_gcd, normalize_associate
from .mpoly import MPoly

__all__ = ["RatFunc", "RatFuncField", "rf_normalize"]


def rf_normalize(num: MPoly, den: MPoly) -> "RatFunc":
    """Cancel the gcd and scale so ``den`` is primitive over Z with positive leading coefficient."""
    if not den:
        raise ZeroDenominator("rational function with zero denominator")
    if num.nvars != den.nvars:
        raise ValueError("variable count mismatch")
    if not num:
        return RatFunc._make(num, MPoly.constant(den.nvars, 1))
    if den.is_constant():
        c = den.constant_value()
        return RatFunc._make(num.scale(1 / c), MPoly.constant(den.nvars, 1))
    g = mv_gcd(num, den)
    if not g.is_constant():
        num = num.exquo(g)
        den = den.exquo(g)
    nd = normalize_associate(den)
    if nd is not den:
        # nd = den * s for a rational s; rescale the numerator to match
        e, c = next(iter(den.terms.items()))
        s = nd.terms[e] / c
        num = num.scale(s)
        den = nd
    if den.is_constant():
        den = MPoly.constant(den.nvars, 1)
    return RatFunc._make(num, den)


class RatFunc:
    """A quotient ``num/den`` of polynomials over Q, always kept canonical."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        if den is None:
            den = MPoly.constant(num.nvars, 1)
        c = rf_normalize(num, den)
        self.num, self.den, self._hash = c.num, c.den, None

    @classmethod
    def _make(cls, num, den):
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def from_poly(cls, p: MPoly):
        return cls._make(p, MPoly.constant(p.nvars, 1))

    @classmethod
    def constant(cls, nvars, c):
        return cls.from_poly(MPoly.constant(nvars, Fraction(c)))

    @property
    def nvars(self):
        return self.num.nvars

    def is_poly(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def as_rational(self):
        return self.constant_value() if self.is_constant() else None

    def constant_value(self) -> Fraction:
        return self.num.constant_value()

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.den.is_constant() and self.num == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def _lift(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, Fraction)):
            return RatFunc.constant(self.nvars, other)
        return None

    def __neg__(self):
        return RatFunc._make(-self.num, self.den)

    def __pos__(self):
        return self

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            if self.den.is_constant():
                return RatFunc._make(self.num + o.num, self.den)
            return rf_normalize(self.num + o.num, self.den)
        return rf_normalize(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return RatFunc.constant(self.nvars, 0)
            return RatFunc._make(self.num.scale(Fraction(other)), self.den)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if not self.num or not other.num:
            return RatFunc.constant(self.nvars, 0)
        if self.den.is_constant() and other.den.is_constant():
            return RatFunc._make(self.num * other.num, self.den)
        return rf_normalize(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        return rf_normalize(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return RatFunc._make(self.num.scale(1 / Fraction(other)), self.den)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc._make(self.num ** n, self.den ** n)

    def evaluate(self, values):
        """Evaluate numerator and denominator; raises ZeroDivisionError at a pole."""
        d = self.den.evaluate(values)
        n = self.num.evaluate(values)
        if self.den.is_constant():
            return n
        return n / d

    def to_str(self, names=None):
        names = names or [f"t{i + 1}" for i in range(self.nvars)]
        if self.den.is_constant():
            return self.num.to_str(names)
        return f"({self.num.to_str(names)})/({self.den.to_str(names)})"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"RatFunc({self.to_str()!r})"


class RatFuncField:
    """Coefficient domain Q(t1..tr)."""

    is_field = True

    def __init__(self, nvars: int):
        self.nvars = nvars
        self.zero = RatFunc.constant(nvars, 0)
        self.one = RatFunc.constant(nvars, 1)

    def convert(self, x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, MPoly):
            return RatFunc.from_poly(x)
        return RatFunc.constant(self.nvars, x)

    def __eq__(self, other):
        return isinstance(other, RatFuncField) and other.nvars == self.nvars

    def __hash__(self):
        return hash(("RatFuncField", self.nvars))

    def __repr__(self):
        return f"QQ(t1..t{self.nvars})"
