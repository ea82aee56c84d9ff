"""Nonvanishing certificates on polydisks and the Taylor tail constants.

Polydisks are products of closed complex disks; a binding known only up to
a ball of radius ``r_i`` is handled by enlarging its disk by ``r_i``, which
covers every admissible true value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, log

from ..errors import PrecisionFailure
from ..exactcore.numbers import GaussRat
from .ball import Ball, BallDivisionError
from .evaluate import eval_mpoly, eval_ratfunc, to_ball

__all__ = [
    "NonvanishingCertificate",
    "TailBounds",
    "certify_ball_nonvanishing",
    "center_balls",
    "split_cell",
    "sup_abs",
    "k_tail",
    "c_upper",
    "tail_constants",
    "SQRT2_UPPER",
]

# sqrt(2) <= 14143/10000, so sqrt2/(sqrt2 - 1) = 2 + sqrt2 <= 34143/10000
SQRT2_UPPER = Fraction(14143, 10000)
_COVER = Fraction(7072, 10000)  # >= sqrt(2)/2: four such disks cover a disk


@dataclass
class NonvanishingCertificate:
    ok: bool
    radius: Fraction
    cells: int
    depth: int
    min_abs_lower: object = None
    witness: object = None
    reason: str = ""

    def __bool__(self):
        return self.ok


@dataclass
class TailBounds:
    eps: Fraction
    M: Fraction
    C_upper: Fraction
    K_tail: int
    eta: object = None
    delta: object = None
    taylor_order: object = None
    extra: dict = field(default_factory=dict)


def center_balls(center, rho: Fraction):
    """Turn a list of scalars/balls/rationals into balls much smaller than ``rho``."""
    out = []
    for c in center:
        if hasattr(c, "refine"):
            p = 16
            while True:
                b = c.refine(p)
                if b.radius * 1024 <= rho or b.radius == 0:
                    break
                p *= 2
                if p > 1 << 16:
                    raise PrecisionFailure("cannot refine a center far below the radius")
            out.append(b)
        else:
            out.append(to_ball(c))
    return out


def split_cell(cell):
    """Cover a polydisk cell by four cells, splitting its widest coordinate."""
    k = max(range(len(cell)), key=lambda i: cell[i].radius)
    b = cell[k]
    h = b.radius / 2
    out = []
    for dre, dim in ((1, 1), (-1, 1), (-1, -1), (1, -1)):
        c = GaussRat(b.center.re + dre * h, b.center.im + dim * h)
        out.append(cell[:k] + (Ball(c, b.radius * _COVER),) + cell[k + 1:])
    return out


def _work_prec(rho: Fraction) -> int:
    bits = rho.denominator.bit_length() - rho.numerator.bit_length()
    return max(64, bits + 64)


def certify_ball_nonvanishing(polys, center, rho, max_depth: int = 14, max_cells: int = 20000,
                              prec: int = None) -> NonvanishingCertificate:
    """Certify that no polynomial in ``polys`` vanishes on the closed polydisk.

    A false answer means zero could not be excluded somewhere within the
    subdivision budget; it is not a proof of vanishing.
    """
    rho = Fraction(rho)
    if rho <= 0:
        raise ValueError("radius must be positive")
    live = []
    for p in polys:
        if not p:
            return NonvanishingCertificate(False, rho, 0, 0, reason="zero polynomial")
        if not p.is_constant():
            live.append(p)
    if not live:
        return NonvanishingCertificate(True, rho, 1, 0, min_abs_lower=None)
    centers = center_balls(center, rho)
    prec = prec or _work_prec(rho)
    root = tuple(Ball(c.center, rho + c.radius) for c in centers)
    stack = [(root, 0)]
    cells = 0
    deepest = 0
    min_lower = None
    while stack:
        cell, depth = stack.pop()
        cells += 1
        deepest = max(deepest, depth)
        good = True
        lows = []
        for p in live:
            v = eval_mpoly(p, cell, prec)
            if v.contains_zero():
                good = False
                break
            lows.append(v.abs_lower())
        if good:
            m = min(lows)
            if min_lower is None or m < min_lower:
                min_lower = m
            continue
        if depth >= max_depth or cells >= max_cells:
            return NonvanishingCertificate(False, rho, cells, deepest, witness=cell,
                                           reason="zero not excluded within the subdivision budget")
        for sub in split_cell(cell):
            # covering disks poke out of their parent; drop the parts outside the polydisk
            if all(a.overlaps(b) for a, b in zip(sub, root)):
                stack.append((sub, depth + 1))
    return NonvanishingCertificate(True, rho, cells, deepest, min_abs_lower=min_lower)


def sup_abs(funcs, cell, max_depth: int = 10, prec: int = None) -> Fraction:
    """Upper bound for ``max |f|`` over a polydisk; ``funcs`` are RatFuncs or MPolys."""
    prec = prec or _work_prec(min(b.radius for b in cell) or Fraction(1))
    best = Fraction(0)
    stack = [(cell, 0)]
    while stack:
        c, depth = stack.pop()
        try:
            vals = [eval_ratfunc(f, c, prec) if hasattr(f, "den") else eval_mpoly(f, c, prec)
                    for f in funcs]
        except BallDivisionError:
            if depth >= max_depth:
                raise PrecisionFailure("cannot bound a coefficient near a pole") from None
            stack.extend((s, depth + 1) for s in split_cell(c))
            continue
        for v in vals:
            u = v.abs_upper()
            if u > best:
                best = u
    return best


def k_tail(r: int) -> int:
    """Least K >= r with k^r <= sqrt(2)^k, i.e. k^(2r) <= 2^k, for every k >= K.

    ``k^r / sqrt(2)^k`` decreases once ``k > 2r/ln 2``, so checking up to that
    threshold (and one past it) decides the question.
    """
    if r <= 0:
        return 0
    threshold = int(2 * r / log(2)) + 2
    last_bad = None
    k = r
    while k <= threshold or last_bad == k - 1:
        if k ** (2 * r) > 2 ** k:
            last_bad = k
        k += 1
    return r if last_bad is None else last_bad + 1


def c_upper(M: Fraction, r: int) -> Fraction:
    """Rational upper bound for ``M 2^r / (r-1)! * sqrt2/(sqrt2 - 1)``."""
    if r <= 0:
        return Fraction(M)
    return Fraction(M) * 2 ** r / factorial(r - 1) * (2 + SQRT2_UPPER)


def tail_constants(F, eps, center=None) -> TailBounds:
    """M, C_upper and K_tail for the presentation on the polydisk of radius ``2 eps``."""
    eps = Fraction(eps)
    center = center if center is not None else F.bindings
    rho = 2 * eps
    if F.r == 0:
        cell = ()
    else:
        cb = center_balls(center, rho)
        cell = tuple(Ball(c.center, rho + c.radius) for c in cb)
    funcs = [c for c in F.P[:-1] if c]
    if not funcs:
        sup = Fraction(0)
    elif F.r == 0:
        sup = max(abs(c.constant_value()) if c.constant_value().__class__ is Fraction else
                  GaussRat(c.constant_value()).abs_upper() for c in funcs)
    else:
        sup = sup_abs(funcs, cell)
    M = 1 + sup
    return TailBounds(eps, M, c_upper(M, F.r), k_tail(F.r))
