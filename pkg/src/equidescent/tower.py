"""The coefficient field k = Q(t1..tr)[z]/(P) with an exact zero test.

Elements are vectors of ``d`` rational functions in t; multiplication reduces
modulo the monic minimal polynomial ``P``.  Zero testing is purely symbolic
and never looks at the numeric values bound to the generators.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DivisionByZero, NotInvertible, NotMonic, NotSquarefree, ValidationError
from .exactcore.gcd import mv_lcm, normalize_associate
from .exactcore.mpoly import MPoly
from .exactcore.ratfunc import RatFunc, RatFuncField
from .exactcore.resultant import resultant
from .exactcore.text import parse_expr
from .exactcore.upoly import up_deriv, up_gcd, up_mul, up_trim, up_xgcd

__all__ = ["FieldPresentation", "TowerElem", "tw_mul", "tw_inv", "tw_is_zero"]


class FieldPresentation:
    """Presentation of k: ``r`` generators t, algebraic z with monic minimal polynomial P.

    ``P`` is the ascending list of ``d + 1`` RatFunc coefficients.  ``bindings``
    are the numeric values of the t's (computable scalars) and ``z_selector``
    a ball isolating the chosen root of ``P(t, .)``.  Irreducibility of P and
    algebraic independence of the bindings are the caller's contract;
    squarefreeness of P is checked here.
    """

    is_field = True

    def __init__(self, r: int, P, bindings=None, z_selector=None, ground: str = "R"):
        if r < 0:
            raise ValueError("r must be nonnegative")
        if ground not in ("R", "C"):
            raise ValueError("ground must be 'R' or 'C'")
        self.r = r
        self.ground = ground
        self.rf = RatFuncField(r)
        P = [self.rf.convert(c) for c in P]
        P = up_trim(P)
        if len(P) < 2:
            raise ValidationError("P must have degree at least 1 in z")
        if P[-1] != 1:
            raise NotMonic(f"P must be monic in z, leading coefficient is {P[-1]}")
        self.P = tuple(P)
        self.d = len(P) - 1
        self.bindings = list(bindings) if bindings is not None else []
        if bindings is not None and len(self.bindings) != r:
            raise ValidationError(f"expected {r} bindings, got {len(self.bindings)}")
        self.z_selector = z_selector
        if self.d > 1 and len(up_gcd(list(self.P), up_deriv(list(self.P)))) > 1:
            raise NotSquarefree("P is not squarefree in z")
        self.zero = TowerElem._make(self, (self.rf.zero,) * self.d)
        self.one = self.constant(1)
        self._disc = None

    # -- element constructors ----------------------------------------------
    def constant(self, c) -> "TowerElem":
        c = self.rf.convert(c)
        return TowerElem._make(self, (c,) + (self.rf.zero,) * (self.d - 1))

    def convert(self, x):
        if isinstance(x, TowerElem):
            if x.field is not self and x.field != self:
                raise ValueError("element belongs to another presentation")
            return x
        return self.constant(x)

    def element(self, coeffs) -> "TowerElem":
        return TowerElem(self, coeffs)

    @property
    def z(self) -> "TowerElem":
        if self.d == 1:
            return self.constant(-self.P[0])
        return TowerElem._make(self, (self.rf.zero, self.rf.one) + (self.rf.zero,) * (self.d - 2))

    def t(self, i: int) -> "TowerElem":
        return self.constant(MPoly.gen(self.r, i))

    def t_names(self):
        if self.r == 1:
            return ["t"]
        return [f"t{i + 1}" for i in range(self.r)]

    def symbols(self):
        """Name table for the expression parser: t's, z and, for r = 1, ``t1`` as an alias."""
        table = {name: self.t(i) for i, name in enumerate(self.t_names())}
        for i in range(self.r):
            table[f"t{i + 1}"] = self.t(i)
        table["z"] = self.z
        return table

    def parse(self, text: str) -> "TowerElem":
        v = parse_expr(text, self.symbols())
        return self.convert(v)

    # -- structure --------------------------------------------------------------
    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, FieldPresentation) and self.r == other.r
                and self.P == other.P)

    def __hash__(self):
        return hash((self.r, self.P))

    def __repr__(self):
        return f"FieldPresentation(r={self.r}, d={self.d}, P={self.P_str()!r})"

    def P_str(self) -> str:
        return _coeffs_to_expr(self.P, self.t_names())

    def pole_denominators(self):
        """Nonconstant denominators of the coefficients of P (polynomials in t)."""
        out = []
        for c in self.P:
            if not c.den.is_constant() and c.den not in out:
                out.append(c.den)
        return out

    def cleared_P(self) -> MPoly:
        """P times the lcm of its denominators, as a polynomial in (t, z)."""
        D = MPoly.constant(self.r, 1)
        for c in self.P:
            D = mv_lcm(D, c.den)
        terms = {}
        for k, c in enumerate(self.P):
            num = c.num * D.exquo(c.den)
            for e, v in num.terms.items():
                terms[e + (k,)] = v
        return MPoly(self.r + 1, terms)

    def discriminant_numerator(self) -> MPoly:
        """Res_z(P', dP'/dz) for the cleared P', a polynomial in t (zero set contains the bad locus)."""
        if self._disc is None:
            Pc = self.cleared_P()
            if self.d == 1:
                R = Pc.coeff_in(self.r, 1)
            else:
                R = resultant(Pc, Pc.diff(self.r), self.r)
            self._disc = normalize_associate(R.truncate_vars(self.r))
        return self._disc

    def bad_locus(self):
        """Polynomials in t whose common nonvanishing makes P(t, .) squarefree with finite coefficients."""
        polys = [self.discriminant_numerator()] + self.pole_denominators()
        return [p for p in polys if not p.is_constant()]


def _coeffs_to_expr(coeffs, names, var="z"):
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        cs = c.to_str(names)
        if c.is_constant():
            v = c.constant_value()
            neg = v < 0
            a = -v if neg else v
            body = mono if (mono and a == 1) else (cs.lstrip("-") + ("*" + mono if mono else ""))
        else:
            # a single negative term keeps its sign outside: "z^2 - t", not "z^2 + -t"
            neg = c.den.is_constant() and len(c.num) == 1 and cs.startswith("-")
            if neg:
                cs = (-c).to_str(names)
            body = f"({cs})*{mono}" if mono else cs
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts) if parts else "0"


class TowerElem:
    """Element of k written as ``sum c_k(t) z^k`` with ``deg < d``."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: FieldPresentation, coeffs):
        coeffs = [field.rf.convert(c) for c in coeffs]
        if len(coeffs) > field.d:
            coeffs = _reduce(coeffs, field)
        coeffs = coeffs + [field.rf.zero] * (field.d - len(coeffs))
        self.field = field
        self.coeffs = tuple(coeffs)
        self._hash = None

    @classmethod
    def _make(cls, field, coeffs):
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    def _lift(self, other):
        if isinstance(other, TowerElem):
            return other
        if isinstance(other, (int, Fraction, RatFunc)):
            return self.field.constant(other)
        return None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def as_rational(self):
        """The element as a Fraction when it is a rational constant, else None."""
        if self.is_rational_constant():
            return self.coeffs[0].constant_value()
        return None

    def is_rational_constant(self) -> bool:
        return all(not c for c in self.coeffs[1:]) and self.coeffs[0].is_constant()

    def in_ground(self) -> bool:
        """True if the element lies in Q(t) (no z-part)."""
        return all(not c for c in self.coeffs[1:])

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if self._hash is None:
            if self.in_ground():
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash(self.coeffs)
        return self._hash

    def __neg__(self):
        return TowerElem._make(self.field, tuple(-c for c in self.coeffs))

    def __pos__(self):
        return self

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return TowerElem._make(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return TowerElem._make(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TowerElem._make(self.field, tuple(c * other for c in self.coeffs))
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return tw_mul(self, o)

    __rmul__ = __mul__

    def inverse(self):
        return tw_inv(self)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise DivisionByZero("division by zero")
            return TowerElem._make(self.field, tuple(c / other for c in self.coeffs))
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return tw_mul(self, tw_inv(o))

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return tw_mul(o, tw_inv(self))

    def __pow__(self, n: int):
        if n < 0:
            return tw_inv(self) ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = tw_mul(result, base)
            n >>= 1
            if n:
                base = tw_mul(base, base)
        return result

    def denominators(self):
        return [c.den for c in self.coeffs if c and not c.den.is_constant()]

    def to_text(self) -> str:
        """The d coordinates as comma-separated rational-function strings."""
        names = self.field.t_names()
        return ", ".join(c.to_str(names) for c in self.coeffs)

    def __str__(self):
        return _coeffs_to_expr(self.coeffs, self.field.t_names())

    def __repr__(self):
        return f"TowerElem({self})"


def _reduce(coeffs, field):
    P = field.P
    d = field.d
    a = list(coeffs)
    for k in range(len(a) - 1, d - 1, -1):
        c = a[k]
        if not c:
            continue
        for i in range(d):
            if P[i]:
                a[k - d + i] = a[k - d + i] - c * P[i]
    return a[:d]


def tw_mul(a: TowerElem, b: TowerElem, F: FieldPresentation = None) -> TowerElem:
    """Product reduced modulo P."""
    field = F or a.field
    if field.d == 1:
        return TowerElem._make(field, (a.coeffs[0] * b.coeffs[0],))
    prod = up_mul(up_trim(a.coeffs), up_trim(b.coeffs))
    red = _reduce(prod, field) if len(prod) > field.d else prod
    red = list(red) + [field.rf.zero] * (field.d - len(red))
    return TowerElem._make(field, tuple(red))


def tw_inv(a: TowerElem, F: FieldPresentation = None) -> TowerElem:
    """Inverse by the extended Euclidean algorithm against P."""
    field = F or a.field
    if not a:
        raise DivisionByZero("inverse of zero in the tower")
    if field.d == 1 or a.in_ground():
        inv = a.coeffs[0].inverse() if a.in_ground() else None
        if inv is not None:
            return field.constant(inv)
    g, s, _ = up_xgcd(up_trim(a.coeffs), list(field.P))
    if len(g) != 1:
        raise NotInvertible("element shares a factor with P; P is reducible", factor=g)
    return TowerElem(field, s)


def tw_is_zero(a: TowerElem) -> bool:
    return a.is_zero()
