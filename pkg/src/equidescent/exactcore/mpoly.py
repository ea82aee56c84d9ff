"""Sparse multivariate polynomials over an arbitrary coefficient field.

Coefficients are any objects supporting ``+ - * /``, unary minus, ``==`` and
``bool`` (false exactly for zero).  Fractions, :class:`GaussRat`, rational
functions, tower elements and algebraic numbers all qualify.  Exponent vectors
are tuples; the canonical term order is graded lexicographic with
``x1 > x2 > ... > xn``.
"""

from __future__ import annotations

from fractions import Fraction

from .numbers import QQ, GaussRat, fmt_rat

__all__ = ["MPoly", "grlex_key", "lex_key", "monomial_divides"]


def grlex_key(exp):
    return (sum(exp), exp)


def lex_key(exp):
    return exp


def monomial_divides(a, b) -> bool:
    """True if x^a divides x^b."""
    return all(i <= j for i, j in zip(a, b))


def _add_exp(a, b):
    return tuple([i + j for i, j in zip(a, b)])


def _is_scalar(x):
    return isinstance(x, (int, Fraction))


class MPoly:
    """Polynomial in ``nvars`` variables stored as ``{exponent: coefficient}``.

    Zero coefficients are never stored.  Instances are treated as immutable.
    """

    __slots__ = ("nvars", "terms", "domain", "_hash")

    def __init__(self, nvars: int, terms=None, domain=QQ):
        self.nvars = nvars
        self.domain = domain
        self._hash = None
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
                if _is_scalar(c):
                    c = domain.convert(c)
                if c:
                    clean[e] = c
        self.terms = clean

    @classmethod
    def _make(cls, nvars, terms, domain):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        obj.domain = domain
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, nvars, domain=QQ):
        return cls._make(nvars, {}, domain)

    @classmethod
    def constant(cls, nvars, c, domain=QQ):
        if _is_scalar(c):
            c = domain.convert(c)
        return cls._make(nvars, {(0,) * nvars: c} if c else {}, domain)

    @classmethod
    def gen(cls, nvars, i, domain=QQ):
        e = [0] * nvars
        e[i] = 1
        return cls._make(nvars, {tuple(e): domain.one}, domain)

    @classmethod
    def monomial(cls, exp, c, domain=QQ):
        if _is_scalar(c):
            c = domain.convert(c)
        return cls._make(len(exp), {tuple(exp): c} if c else {}, domain)

    # -- basic queries ----------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self):
        """Coefficient of the unit monomial."""
        return self.terms.get((0,) * self.nvars, self.domain.zero)

    def coeff(self, exp):
        return self.terms.get(tuple(exp), self.domain.zero)

    def degree(self, var: int) -> int:
        if not self.terms:
            return -1
        return max(e[var] for e in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def support(self):
        return set(self.terms)

    def sorted_terms(self, key=grlex_key):
        """Terms in decreasing order for ``key``."""
        return sorted(self.terms.items(), key=lambda item: key(item[0]), reverse=True)

    def leading_exponent(self, key=grlex_key):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=key)

    def leading_coefficient(self, key=grlex_key):
        return self.terms[self.leading_exponent(key)]

    def variables(self):
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return sorted(used)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def homogeneous_part(self, degree: int):
        return MPoly._make(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == degree},
                           self.domain)

    def coeffs_in(self, var: int):
        """Map ``k -> coefficient of x_var^k`` (an MPoly free of x_var)."""
        out = {}
        for e, c in self.terms.items():
            k = e[var]
            e2 = e[:var] + (0,) + e[var + 1:]
            out.setdefault(k, {})[e2] = c
        return {k: MPoly._make(self.nvars, t, self.domain) for k, t in out.items()}

    def coeff_in(self, var: int, k: int):
        t = {}
        for e, c in self.terms.items():
            if e[var] == k:
                t[e[:var] + (0,) + e[var + 1:]] = c
        return MPoly._make(self.nvars, t, self.domain)

    # -- equality / hashing ------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if _is_scalar(other) or isinstance(other, GaussRat):
            if not other:
                return not self.terms
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    # -- arithmetic -----------------------------------------------------------
    def _const(self, c):
        if _is_scalar(c):
            c = self.domain.convert(c)
        return c

    def _check(self, other):
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __neg__(self):
        return MPoly._make(self.nvars, {e: -c for e, c in self.terms.items()}, self.domain)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, MPoly):
            self._check(other)
            if len(other.terms) > len(self.terms):
                big, small = other.terms, self.terms
            else:
                big, small = self.terms, other.terms
            res = dict(big)
            for e, c in small.items():
                if e in res:
                    s = res[e] + c
                    if s:
                        res[e] = s
                    else:
                        del res[e]
                else:
                    res[e] = c
            return MPoly._make(self.nvars, res, self.domain)
        if isinstance(other, (int, Fraction)) or _is_element(other, self.domain):
            return self + MPoly.constant(self.nvars, other, self.domain)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, MPoly):
            self._check(other)
            res = dict(self.terms)
            for e, c in other.terms.items():
                if e in res:
                    s = res[e] - c
                    if s:
                        res[e] = s
                    else:
                        del res[e]
                else:
                    res[e] = -c
            return MPoly._make(self.nvars, res, self.domain)
        if isinstance(other, (int, Fraction)) or _is_element(other, self.domain):
            return self - MPoly.constant(self.nvars, other, self.domain)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = self._const(c)
        if not c:
            return MPoly._make(self.nvars, {}, self.domain)
        res = {}
        for e, a in self.terms.items():
            p = a * c
            if p:
                res[e] = p
        return MPoly._make(self.nvars, res, self.domain)

    def mul_monomial(self, exp, c):
        res = {}
        for e, a in self.terms.items():
            p = a * c
            if p:
                res[_add_exp(e, exp)] = p
        return MPoly._make(self.nvars, res, self.domain)

    def __mul__(self, other):
        if isinstance(other, MPoly):
            self._check(other)
            if not self.terms or not other.terms:
                return MPoly._make(self.nvars, {}, self.domain)
            if len(other.terms) == 1:
                (e, c), = other.terms.items()
                return self.mul_monomial(e, c)
            if len(self.terms) == 1:
                (e, c), = self.terms.items()
                return other.mul_monomial(e, c)
            res = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = _add_exp(e1, e2)
                    if e in res:
                        res[e] = res[e] + c1 * c2
                    else:
                        res[e] = c1 * c2
            return MPoly._make(self.nvars, {e: c for e, c in res.items() if c}, self.domain)
        if isinstance(other, (int, Fraction)) or _is_element(other, self.domain):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = MPoly.constant(self.nvars, self.domain.one, self.domain)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, MPoly):
            if not other.is_constant():
                return self.exquo(other)
            other = other.constant_value()
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        return self.scale(self.domain.one / self._const(other))

    def exquo(self, other):
        """Exact quotient; raises ``ValueError`` if ``other`` does not divide ``self``."""
        if not isinstance(other, MPoly):
            return self / other
        self._check(other)
        if not other.terms:
            raise ZeroDivisionError("polynomial division by zero")
        if other.is_constant():
            return self / other.constant_value()
        lt_e = other.leading_exponent()
        lt_inv = self.domain.one / other.terms[lt_e]
        rest = [(e, c) for e, c in other.terms.items() if e != lt_e]
        rem = dict(self.terms)
        quo = {}
        while rem:
            e = max(rem, key=grlex_key)
            if not monomial_divides(lt_e, e):
                raise ValueError("inexact polynomial division")
            m = tuple([a - b for a, b in zip(e, lt_e)])
            c = rem.pop(e) * lt_inv
            quo[m] = c
            for e2, c2 in rest:
                e3 = _add_exp(e2, m)
                v = rem.get(e3)
                if v is None:
                    rem[e3] = -(c * c2)
                else:
                    v = v - c * c2
                    if v:
                        rem[e3] = v
                    else:
                        del rem[e3]
        return MPoly._make(self.nvars, quo, self.domain)

    def divides(self, other) -> bool:
        try:
            other.exquo(self)
        except ValueError:
            return False
        return True

    def monic(self, key=grlex_key):
        if not self.terms:
            return self
        return self / self.leading_coefficient(key)

    # -- structural transforms ------------------------------------------------
    def map_coeffs(self, fn, domain=None):
        domain = self.domain if domain is None else domain
        res = {}
        for e, c in self.terms.items():
            v = fn(c)
            if v:
                res[e] = v
        return MPoly._make(self.nvars, res, domain)

    def diff(self, var: int):
        res = {}
        for e, c in self.terms.items():
            k = e[var]
            if k:
                res[e[:var] + (k - 1,) + e[var + 1:]] = c * k
        return MPoly._make(self.nvars, {e: c for e, c in res.items() if c}, self.domain)

    def truncate_vars(self, nvars: int):
        """Drop trailing variables, which must not occur."""
        res = {}
        for e, c in self.terms.items():
            if any(e[nvars:]):
                raise ValueError("polynomial involves a dropped variable")
            res[e[:nvars]] = c
        return MPoly._make(nvars, res, self.domain)

    def extend_vars(self, nvars: int):
        pad = (0,) * (nvars - self.nvars)
        return MPoly._make(nvars, {e + pad: c for e, c in self.terms.items()}, self.domain)

    def evaluate(self, values):
        """Substitute ``values[i]`` for every variable; returns a coefficient-like value."""
        if len(values) != self.nvars:
            raise ValueError("wrong number of values")
        powers = [dict() for _ in range(self.nvars)]
        acc = None
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    p = powers[i].get(k)
                    if p is None:
                        p = values[i] ** k
                        powers[i][k] = p
                    term = term * p
            acc = term if acc is None else acc + term
        if acc is None:
            return self.domain.zero
        return acc

    def compose(self, images):
        """Substitute the polynomial ``images[i]`` for variable ``i``."""
        if len(images) != self.nvars:
            raise ValueError("wrong number of images")
        target = images[0] if images else None
        nv = target.nvars if target is not None else 0
        powers = [dict() for _ in range(self.nvars)]
        acc = MPoly._make(nv, {}, self.domain)
        for e, c in self.terms.items():
            term = MPoly.constant(nv, c, self.domain)
            for i, k in enumerate(e):
                if k:
                    p = powers[i].get(k)
                    if p is None:
                        p = images[i] ** k
                        powers[i][k] = p
                    term = term * p
            acc = acc + term
        return acc

    # -- text ---------------------------------------------------------------------
    def to_str(self, names=None, key=grlex_key):
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms(key):
            mono = "*".join(
                (names[i] if k == 1 else f"{names[i]}^{k}") for i, k in enumerate(e) if k)
            if isinstance(c, GaussRat) and c.im == 0:
                c = c.re
            elif hasattr(c, "as_rational"):
                c = c.as_rational() if c.as_rational() is not None else c
            if isinstance(c, (int, Fraction)):
                neg = c < 0
                a = abs(c)
                if mono and a == 1:
                    body = mono
                else:
                    body = fmt_rat(a) + ("*" + mono if mono else "")
            else:
                neg = False
                cs = str(c)
                # a single product term needs neither parentheses nor an inner sign
                if " " not in cs:
                    if cs.startswith("-"):
                        neg, cs = True, cs[1:]
                elif not (cs.startswith("(") and cs.endswith(")")):
                    cs = f"({cs})"
                body = cs + ("*" + mono if mono else "")
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"MPoly({self.nvars}, {self.to_str()!r}, {self.domain!r})"


def _is_element(x, domain):
    """Loose test that ``x`` is a coefficient rather than an unrelated object."""
    if isinstance(x, MPoly):
        return False
    return isinstance(x, type(domain.one)) or isinstance(x, GaussRat)
