"""Computable scalars: rationals, a few builtin constants, and external oracles.

``refine(p)`` returns a :class:`Ball` of radius at most ``2**-p`` that contains
the value.  Builtin constants are evaluated with integer fixed-point series
whose truncation and rounding errors are bounded explicitly.
"""

from __future__ import annotations

import subprocess
import threading
from fractions import Fraction

from ..errors import OracleFailure, PrecisionFailure
from ..exactcore.numbers import GaussRat, as_gauss, fmt_rat, parse_rat
from .ball import Ball

__all__ = [
    "ComputableScalar",
    "refine_scalar",
    "pi_ball",
    "exp_ball",
    "log_ball",
    "OracleProcess",
    "PREC_START",
    "PREC_CAP",
    "precision_schedule",
]

PREC_START = 16
PREC_CAP = 1 << 20


def precision_schedule(start: int = PREC_START, cap: int = PREC_CAP):
    p = start
    while p <= cap:
        yield p
        p *= 2


# -- builtin constants ----------------------------------------------------------------

def _atan_inv_fixed(x: int, scale: int):
    """``floor``-based fixed-point atan(1/x) * scale and an error bound in ulps.

    Every term ``floor(scale / (x^(2k+1) (2k+1)))`` is computed exactly, because
    ``floor(floor(a)/m) == floor(a/m)`` for positive integers ``m``.  The error
    is below one ulp per term plus one for the discarded tail.
    """
    x2 = x * x
    power = scale // x
    total = 0
    k = 0
    while power:
        term = power // (2 * k + 1)
        total += -term if k % 2 else term
        k += 1
        power //= x2
    return total, k + 1


def pi_ball(p: int) -> Ball:
    """pi = 16 atan(1/5) - 4 atan(1/239) to within 2**-p."""
    guard = 8 + (p + 16).bit_length()
    while True:
        bits = p + guard
        scale = 1 << bits
        a, ea = _atan_inv_fixed(5, scale)
        b, eb = _atan_inv_fixed(239, scale)
        center = Fraction(16 * a - 4 * b, scale)
        radius = Fraction(16 * ea + 4 * eb, scale)
        if radius <= Fraction(1, 1 << p):
            return Ball(center, radius)
        guard += 4


def _exp_series(x: Fraction, prec: int) -> Ball:
    """exp(x) for |x| <= 1/2 by Taylor series with a geometric tail bound."""
    eps = Fraction(1, 1 << prec)
    acc = Ball(1, 0, prec)
    term = Ball(1, 0, prec)
    ax = abs(x)
    k = 1
    bound = Fraction(1)
    while True:
        term = term * x / k
        acc = acc + term
        bound = bound * ax / k
        k += 1
        # remaining terms are dominated by bound * sum (ax)^i <= 2 * bound * ax
        tail = 2 * bound * ax / k
        if tail < eps:
            return acc.widen(tail)


def exp_ball(q: Fraction, p: int) -> Ball:
    """exp(q) for rational q, radius <= 2**-p."""
    q = Fraction(q)
    s = 0
    while abs(q) / (1 << s) > Fraction(1, 2):
        s += 1
    size_bits = int(abs(q) * 2) + 2
    guard = 16 + 2 * s + size_bits
    while True:
        w = p + guard
        b = _exp_series(q / (1 << s), w)
        for _ in range(s):
            b = b * b
        if b.radius <= Fraction(1, 1 << p):
            return Ball(b.center, b.radius)
        guard += 16


def _atanh_series(y: Fraction, prec: int) -> Ball:
    """atanh(y) for |y| <= 1/3."""
    eps = Fraction(1, 1 << prec)
    y2 = y * y
    power = Ball(y, 0, prec)
    acc = Ball(0, 0, prec)
    k = 0
    pw = abs(y)
    while True:
        acc = acc + power / (2 * k + 1)
        k += 1
        power = power * y2
        pw = pw * y2
        tail = pw / (2 * k + 1) / (1 - y2)
        if tail < eps:
            return acc.widen(tail)


def log_ball(q: Fraction, p: int) -> Ball:
    """log(q) for rational q > 0, radius <= 2**-p."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("log of a nonpositive number")
    k = q.numerator.bit_length() - q.denominator.bit_length()
    m = q / Fraction(2) ** k
    while m > Fraction(4, 3):
        m /= 2
        k += 1
    while m < Fraction(2, 3):
        m *= 2
        k -= 1
    guard = 12 + abs(k).bit_length()
    while True:
        w = p + guard
        ln2 = _atanh_series(Fraction(1, 3), w) * 2
        lm = _atanh_series((m - 1) / (m + 1), w) * 2
        b = ln2 * k + lm
        if b.radius <= Fraction(1, 1 << p):
            return Ball(b.center, b.radius)
        guard += 8


# -- external oracles ---------------------------------------------------------------------

class OracleProcess:
    """A line-oriented subprocess answering ``REFINE i p`` with ``BALL re im rad``."""

    def __init__(self, command):
        self.command = list(command)
        self._proc = None
        self._lock = threading.Lock()

    def _start(self):
        if self._proc is None or self._proc.poll() is not None:
            try:
                self._proc = subprocess.Popen(
                    self.command, stdin=subprocess.PIPE, stdout=subprocess.PIPE, text=True, bufsize=1)
            except OSError as exc:
                raise OracleFailure(f"cannot start oracle {self.command!r}: {exc}") from exc

    def query(self, index: int, p: int) -> Ball:
        with self._lock:
            self._start()
            try:
                self._proc.stdin.write(f"REFINE {index} {p}\n")
                self._proc.stdin.flush()
                line = self._proc.stdout.readline()
            except (BrokenPipeError, OSError) as exc:
                raise OracleFailure(f"oracle pipe failed: {exc}") from exc
        parts = line.split()
        if len(parts) != 4 or parts[0] != "BALL":
            raise OracleFailure(f"malformed oracle reply {line.strip()!r}")
        try:
            re, im, rad = (parse_rat(x) for x in parts[1:])
        except (ValueError, ZeroDivisionError) as exc:
            raise OracleFailure(f"malformed oracle reply {line.strip()!r}") from exc
        if rad < 0:
            raise OracleFailure("oracle returned a negative radius")
        return Ball(GaussRat(re, im), rad)

    def close(self):
        with self._lock:
            if self._proc is not None:
                try:
                    self._proc.stdin.close()
                    self._proc.wait(timeout=5)
                except Exception:
                    self._proc.kill()
                self._proc = None


# -- the scalar type -------------------------------------------------------------------------

class ComputableScalar:
    """A real or complex number given by certified approximations.

    ``kind`` is ``"rational"``, ``"builtin"`` or ``"oracle"``.  Refinements are
    cached per precision behind a lock, so concurrent callers see identical balls.
    """

    def __init__(self, kind, value=None, name=None, oracle=None, index=0, real=None):
        self.kind = kind
        self.value = as_gauss(value) if value is not None else None
        self.name = name
        self.oracle = oracle
        self.index = index
        self._cache = {}
        self._lock = threading.Lock()
        if real is None:
            real = self.value.im == 0 if kind == "rational" else True
        self.real = real

    @classmethod
    def rational(cls, q):
        return cls("rational", value=q)

    @classmethod
    def builtin(cls, spec: str):
        spec = " ".join(spec.split())
        parts = spec.split(" ")
        if parts[0] in ("pi", "e") and len(parts) == 1:
            return cls("builtin", name=parts[0])
        if parts[0] in ("log", "exp") and len(parts) == 2:
            arg = parse_rat(parts[1])
            if parts[0] == "log" and arg <= 0:
                raise ValueError("log needs a positive rational argument")
            return cls("builtin", name=f"{parts[0]} {fmt_rat(arg)}")
        raise ValueError(f"unknown builtin constant {spec!r}")

    @classmethod
    def from_oracle(cls, command, index: int = 0, real: bool = True):
        proc = command if isinstance(command, OracleProcess) else OracleProcess(command)
        return cls("oracle", oracle=proc, index=index, real=real)

    def spec(self):
        """Serializable description of the scalar."""
        if self.kind == "rational":
            if self.value.im == 0:
                return fmt_rat(self.value.re)
            return {"re": fmt_rat(self.value.re), "im": fmt_rat(self.value.im)}
        if self.kind == "builtin":
            return self.name
        return {"oracle": self.oracle.command, "index": self.index, "real": self.real}

    def __repr__(self):
        return f"ComputableScalar({self.spec()!r})"

    def exact_value(self):
        return self.value if self.kind == "rational" else None

    def _compute(self, p: int) -> Ball:
        if self.kind == "rational":
            return Ball(self.value, 0)
        if self.kind == "builtin":
            name = self.name
            if name == "pi":
                return pi_ball(p)
            if name == "e":
                return exp_ball(Fraction(1), p)
            op, arg = name.split(" ")
            arg = Fraction(arg)
            return exp_ball(arg, p) if op == "exp" else log_ball(arg, p)
        b = self.oracle.query(self.index, p)
        if b.radius > Fraction(1, 1 << p):
            raise OracleFailure(f"oracle ball radius {b.radius} exceeds 2^-{p}")
        if self.real and b.center.im != 0:
            b = Ball(GaussRat(b.center.re, 0), b.radius + abs(b.center.im))
            if b.radius > Fraction(1, 1 << p):
                raise OracleFailure("oracle returned a non-real center for a real scalar")
        return b

    def refine(self, p: int) -> Ball:
        if p < 0:
            raise ValueError("precision must be nonnegative")
        if p > PREC_CAP:
            raise PrecisionFailure(f"precision {p} exceeds the cap {PREC_CAP}")
        with self._lock:
            b = self._cache.get(p)
            if b is not None:
                return b
            b = self._compute(p)
            for q, other in self._cache.items():
                if not b.overlaps(other):
                    raise OracleFailure(f"inconsistent refinements at precisions {q} and {p}")
            self._cache[p] = b
            return b


def refine_scalar(c: ComputableScalar, p: int) -> Ball:
    return c.refine(p)
