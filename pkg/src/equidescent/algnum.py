"""Exact algebraic numbers in the specialized algebra Q_K[z]/(P~) with a selected embedding.

``P~ = P(q, z)`` is squarefree, so the algebra is a product of number fields;
one isolating disk per root of ``P~`` names the embeddings.  Nothing is ever
factored: deciding whether an element vanishes at an embedding needs only
``g = gcd(rep, P~)`` and disk refinement, since the root is a root of exactly
one of ``g`` and ``P~ / g``.

``bool(x)`` is the zero test *at the embedding*.  Polynomials over these
numbers therefore drop coefficients that vanish at the embedding, which is
arithmetic in the field factor the embedding selects.  Equality is
structural.
"""

from __future__ import annotations

import threading
from fractions import Fraction

from .errors import (DiscriminantVanishes, DivisionByZero, ParseError, PoleAtPoint, PrecisionFailure,
                     ZeroDivisor)
from .exactcore.mpoly import MPoly
from .exactcore.numbers import GQQ, GaussRat, as_gauss, fmt_rat, parse_rat
from .exactcore.text import parse_expr
from .exactcore.upoly import (up_add, up_divmod, up_gcd, up_mul, up_rem, up_str, up_sub,
                              up_trim, up_xgcd)
from .numeric.ball import Ball
from .numeric.evaluate import exact_point_value, horner
from .numeric.roots import RootIsolation, isolate_roots, refine_root

__all__ = [
    "EtaleAlgebra",
    "AlgNum",
    "AlgDomain",
    "specialize_modulus",
    "eval_tower_at_point",
    "alg_is_zero_embedded",
    "parse_algnum",
    "parse_upoly",
]


def _nc(x):
    """Normal form of a scalar: Fraction when real, GaussRat otherwise."""
    if isinstance(x, GaussRat):
        return x.re if x.im == 0 else x
    return Fraction(x)


def _npoly(a):
    return tuple(_nc(c) for c in up_trim(a))


def parse_upoly(text: str, var: str = "z"):
    """Parse a univariate polynomial in ``var`` (and ``I``) into an ascending coefficient tuple."""
    symbols = {var: MPoly.gen(1, 0, GQQ), "I": GaussRat(0, 1)}
    v = parse_expr(text, symbols)
    if isinstance(v, MPoly):
        deg = v.degree(0)
        return _npoly([v.coeff((k,)) for k in range(deg + 1)])
    return _npoly([v])


class EtaleAlgebra:
    """``Q_K[z]/(P~)`` with the isolating disks of the roots of ``P~``.

    ``selected`` is the index of the embedding chosen by root tracking; it
    is the default embedding of new elements.
    """

    def __init__(self, modulus, isolation: RootIsolation = None, q=(), selected: int = 0):
        mod = _npoly(modulus)
        if len(mod) < 2 or mod[-1] != 1:
            raise ValueError("modulus must be monic of degree at least 1")
        self.modulus = mod
        self.d = len(mod) - 1
        self.isolation = isolation if isolation is not None else isolate_roots(list(mod))
        if len(self.isolation) != self.d:
            raise ValueError("isolation must have one disk per root")
        self.q = tuple(_nc(x) for x in q)
        if not 0 <= selected < self.d:
            raise ValueError("selected embedding out of range")
        self.selected = selected
        self.real = all(not isinstance(c, GaussRat) for c in mod)
        self._refined = {}
        self._lock = threading.Lock()
        self._domains = {}

    # -- structure ------------------------------------------------------------
    @property
    def separation(self):
        return self.isolation.separation

    @property
    def balls(self):
        return self.isolation.balls

    def box(self, i: int):
        return self.isolation.balls[i].box(real=self.isolation.real[i])

    def __eq__(self, other):
        return self is other or (isinstance(other, EtaleAlgebra) and self.modulus == other.modulus)

    def __hash__(self):
        return hash(self.modulus)

    def __repr__(self):
        return f"EtaleAlgebra({self.modulus_str()!r})"

    def modulus_str(self) -> str:
        return up_str(list(self.modulus))

    def domain(self, embedding: int = None) -> "AlgDomain":
        e = self.selected if embedding is None else embedding
        dom = self._domains.get(e)
        if dom is None:
            dom = self._domains[e] = AlgDomain(self, e)
        return dom

    def element(self, rep, embedding: int = None) -> "AlgNum":
        return AlgNum(self, rep, embedding)

    def z(self, embedding: int = None) -> "AlgNum":
        return AlgNum(self, (0, 1) if self.d > 1 else (-self.modulus[0],), embedding)

    # -- numerics --------------------------------------------------------------
    def root_ball(self, i: int, radius: Fraction = None) -> Ball:
        """Isolating disk of root ``i``, refined to at most ``radius`` when given."""
        base = self.isolation.balls[i]
        if radius is None or base.radius <= radius:
            return base
        with self._lock:
            b = self._refined.get(i, base)
            if b.radius > radius:
                b = refine_root(list(self.modulus), b, radius, real=self.isolation.real[i])
                self._refined[i] = b
            return b


class AlgDomain:
    """Coefficient domain for polynomials over an algebra at a fixed embedding."""

    is_field = True

    def __init__(self, algebra: EtaleAlgebra, embedding: int):
        self.algebra = algebra
        self.embedding = embedding
        self.zero = AlgNum(algebra, (), embedding)
        self.one = AlgNum(algebra, (Fraction(1),), embedding)

    def convert(self, x):
        if isinstance(x, AlgNum):
            return x
        return AlgNum(self.algebra, (x,), self.embedding)

    def __repr__(self):
        return f"AlgDomain({self.algebra.modulus_str()!r}, embedding={self.embedding})"


def _reduce(a, mod):
    a = up_trim(a)
    if len(a) < len(mod):
        return a
    return up_rem(a, list(mod))


class AlgNum:
    """An element ``rep(z) mod P~`` together with the embedding it is viewed in."""

    __slots__ = ("algebra", "rep", "embedding", "_zero")

    def __init__(self, algebra: EtaleAlgebra, rep, embedding: int = None):
        self.algebra = algebra
        self.rep = _npoly(_reduce([_nc(c) for c in rep], algebra.modulus))
        self.embedding = algebra.selected if embedding is None else embedding
        self._zero = True if not self.rep else None

    @classmethod
    def _make(cls, algebra, rep, embedding):
        obj = cls.__new__(cls)
        obj.algebra = algebra
        obj.rep = rep
        obj.embedding = embedding
        obj._zero = True if not rep else None
        return obj

    def _lift(self, other):
        if isinstance(other, AlgNum):
            if other.algebra is not self.algebra and other.algebra != self.algebra:
                raise ValueError("numbers from different algebras")
            return other
        if isinstance(other, (int, Fraction, GaussRat)):
            return AlgNum._make(self.algebra, _npoly([other]), self.embedding)
        return None

    # -- predicates ----------------------------------------------------------------
    def __bool__(self):
        return not alg_is_zero_embedded(self)

    def is_structural_zero(self) -> bool:
        return not self.rep

    def as_rational(self):
        if not self.rep:
            return Fraction(0)
        if len(self.rep) == 1 and isinstance(self.rep[0], Fraction):
            return self.rep[0]
        return None

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, AlgNum) else other
        if o is None:
            return NotImplemented
        return self.rep == o.rep and self.embedding == o.embedding and self.algebra == o.algebra

    def __hash__(self):
        if len(self.rep) <= 1:
            return hash(self.rep[0] if self.rep else 0)
        return hash(self.rep)

    # -- arithmetic ------------------------------------------------------------------
    def __neg__(self):
        return AlgNum._make(self.algebra, tuple(-c for c in self.rep), self.embedding)

    def __pos__(self):
        return self

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return AlgNum._make(self.algebra, _npoly(up_add(list(self.rep), list(o.rep))), self.embedding)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return AlgNum._make(self.algebra, _npoly(up_sub(list(self.rep), list(o.rep))), self.embedding)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        prod = up_mul(list(self.rep), list(o.rep))
        return AlgNum._make(self.algebra, _npoly(_reduce(prod, self.algebra.modulus)), self.embedding)

    __rmul__ = __mul__

    def inverse(self) -> "AlgNum":
        """Inverse in the whole algebra; raises ZeroDivisor when ``rep`` shares a factor with P~."""
        if not self.rep:
            raise DivisionByZero("inverse of zero")
        g, s, _ = up_xgcd(list(self.rep), list(self.algebra.modulus))
        if len(g) != 1:
            raise ZeroDivisor("element is a zero divisor of the algebra", factor=_npoly(g))
        return AlgNum(self.algebra, [c / g[0] for c in s], self.embedding)

    def local_inverse(self) -> "AlgNum":
        """An element whose product with ``self`` is 1 at the embedding.

        Equal to :meth:`inverse` when that exists; otherwise the inverse in
        the factor ``P~ / gcd(rep, P~)`` that carries the embedding.
        """
        if not self:
            raise DivisionByZero("division by a number that vanishes at the embedding")
        mod = list(self.algebra.modulus)
        g = up_gcd(list(self.rep), mod)
        h = mod if len(g) == 1 else up_divmod(mod, g)[0]
        a = up_rem(list(self.rep), h)
        g2, s, _ = up_xgcd(a, h)
        return AlgNum(self.algebra, [c / g2[0] for c in s], self.embedding)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, GaussRat)):
            if not other:
                raise DivisionByZero("division by zero")
            inv = 1 / _nc(other) if not isinstance(_nc(other), GaussRat) else _nc(other).inverse()
            return AlgNum._make(self.algebra, _npoly([c * inv for c in self.rep]), self.embedding)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.local_inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.local_inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.local_inverse() ** (-n)
        result = AlgNum._make(self.algebra, (Fraction(1),), self.embedding)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- numerics -------------------------------------------------------------------
    def ball(self, p: int = 64) -> Ball:
        """Enclosure of the value at the embedding with radius at most ``2^-p``."""
        if not self.rep:
            return Ball(0)
        if len(self.rep) == 1:
            return Ball(self.rep[0])
        target = Fraction(1, 1 << p)
        # |rep'| is bounded by the coefficient size times a root bound, so a few
        # extra bits per round get there quickly
        q = p + 8 + max(_height_bits(c) for c in self.rep)
        while True:
            root = self.algebra.root_ball(self.embedding, Fraction(1, 1 << q))
            b = horner(list(self.rep), Ball(root.center, root.radius, q + 16))
            if b.radius <= target:
                return b
            q += 32
            if q > p + (1 << 14):
                raise PrecisionFailure("cannot reach the requested enclosure radius")

    # -- text --------------------------------------------------------------------------
    def __str__(self):
        return up_str(list(self.rep)) if self.rep else "0"

    def __repr__(self):
        return f"AlgNum({self}, embedding={self.embedding})"

    def to_text(self) -> str:
        box = " ".join(fmt_rat(v) for v in self.algebra.box(self.embedding))
        return (f"ALGNUM deg={self.algebra.d} modulus={self.algebra.modulus_str()} "
                f"rep={self} box=<{box}>")


def alg_is_zero_embedded(x: AlgNum) -> bool:
    """True iff ``x`` is the number 0 at its embedding."""
    if x._zero is not None:
        return x._zero
    A = x.algebra
    rep = list(x.rep)
    if len(rep) == 1:
        x._zero = False
        return False
    # a value bounded away from zero on the isolating disk settles it at once
    if not x.ball(64).contains_zero():
        x._zero = False
        return False
    mod = list(A.modulus)
    g = up_gcd(rep, mod)
    if len(g) == 1:
        x._zero = False
        return False
    h = up_divmod(mod, g)[0]
    radius = A.balls[x.embedding].radius
    while True:
        disk = A.root_ball(x.embedding, radius)
        B = Ball(disk.center, disk.radius, 64 + _bits(radius))
        if not horner(g, B).contains_zero():
            x._zero = False
            return False
        if not horner(h, B).contains_zero():
            x._zero = True
            return True
        radius = radius / (1 << 16) if radius else Fraction(1, 1 << 64)


def _height_bits(c) -> int:
    c = as_gauss(c)
    return max(abs(c.re).numerator.bit_length(), abs(c.im).numerator.bit_length())


def _bits(r: Fraction) -> int:
    if not r:
        return 64
    return max(0, r.denominator.bit_length() - r.numerator.bit_length())


def specialize_modulus(F, q, isolation: RootIsolation = None, selected: int = 0) -> EtaleAlgebra:
    """The algebra defined by ``P(q, z)``, after exact checks of poles and the discriminant."""
    q = [_nc(x) for x in q]
    if len(q) != F.r:
        raise ValueError(f"point has {len(q)} coordinates, expected {F.r}")
    coeffs = []
    for c in F.P:
        v = exact_point_value(c, q) if F.r else c.constant_value()
        if v is None:
            raise PoleAtPoint("a coefficient of P has a pole at q")
        coeffs.append(v)
    if F.r and F.d > 1:
        disc = F.discriminant_numerator()
        if not disc.evaluate([as_gauss(x) for x in q]):
            raise DiscriminantVanishes("q lies on the discriminant locus of P")
    if isolation is None:
        isolation = isolate_roots(coeffs)
    return EtaleAlgebra(coeffs, isolation, q, selected)


def eval_tower_at_point(a, A: EtaleAlgebra, q=None, embedding: int = None) -> AlgNum:
    """Image of a tower element under ``t -> q, z -> z mod P~``."""
    q = list(A.q) if q is None else [_nc(x) for x in q]
    rep = []
    for c in a.coeffs:
        if not c:
            rep.append(Fraction(0))
            continue
        v = exact_point_value(c, q) if q else c.constant_value()
        if v is None:
            raise PoleAtPoint("a coefficient has a pole at q")
        rep.append(v)
    return AlgNum(A, rep, embedding)


def parse_algnum(text: str) -> AlgNum:
    """Inverse of :meth:`AlgNum.to_text`."""
    text = text.strip()
    if not text.startswith("ALGNUM "):
        raise ParseError("expected an ALGNUM record")
    try:
        head, rest = text[len("ALGNUM "):].split(" modulus=", 1)
        mod_text, rest = rest.split(" rep=", 1)
        rep_text, box_text = rest.split(" box=", 1)
        deg = int(head.split("=", 1)[1])
        box_text = box_text.strip()
        if not (box_text.startswith("<") and box_text.endswith(">")):
            raise ValueError("box must be enclosed in <>")
        box = [parse_rat(v) for v in box_text[1:-1].split()]
    except (ValueError, IndexError) as exc:
        raise ParseError(f"malformed ALGNUM record: {exc}") from exc
    if len(box) != 4:
        raise ParseError("box needs four endpoints")
    mod = parse_upoly(mod_text)
    if len(mod) - 1 != deg:
        raise ParseError("declared degree does not match the modulus")
    A = EtaleAlgebra(mod)
    idx = _box_index(A, box)
    return AlgNum(A, parse_upoly(rep_text), idx)


def _box_index(A: EtaleAlgebra, box) -> int:
    re_lo, re_hi, im_lo, im_hi = box
    hits = []
    for i in range(A.d):
        b = A.box(i)
        if b[0] <= re_hi and re_lo <= b[1] and b[2] <= im_hi and im_lo <= b[3]:
            hits.append(i)
    if len(hits) != 1:
        raise ParseError("box does not single out one root of the modulus")
    return hits[0]
