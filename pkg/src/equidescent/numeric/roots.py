"""Certified isolation of the complex roots of a univariate polynomial.

Approximations come from mpmath's Durand-Kerner solver in a private context;
each one is then certified by the Krawczyk test on a disk: if

    K = c - Y f(c) + (1 - Y f'(X)) (X - c)

lies strictly inside the disk X, then X contains exactly one root of every
polynomial whose coefficients lie in the coefficient balls.  ``deg f``
pairwise disjoint certified disks account for all roots.  For a real
polynomial, a certified disk centred on the real axis holds a real root,
because the conjugate of a non-real root would be a second root in it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from ..errors import NotSquarefree, PrecisionFailure
from ..exactcore.numbers import GaussRat, as_gauss
from ..exactcore.upoly import up_deriv, up_gcd, up_trim
from .ball import Ball, BallDivisionError
from .evaluate import horner, to_ball

__all__ = ["RootIsolation", "isolate_roots", "krawczyk", "refine_root", "check_squarefree"]


@dataclass
class RootIsolation:
    balls: list
    real: list
    separation: object  # Fraction, or None for fewer than two roots

    def boxes(self):
        return [b.box(real=r) for b, r in zip(self.balls, self.real)]

    def __len__(self):
        return len(self.balls)


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = x._mpf_
    if man == 0:
        return Fraction(0)
    if sign:
        man = -man
    if exp >= 0:
        return Fraction(int(man) << exp)
    return Fraction(int(man), 1 << -exp)


def _to_mpc(ctx, c: GaussRat):
    return ctx.mpc(ctx.mpf(c.re.numerator) / c.re.denominator,
                   ctx.mpf(c.im.numerator) / c.im.denominator)


def check_squarefree(coeffs):
    """Raise NotSquarefree if an exact coefficient list has a repeated root."""
    c = up_trim([as_gauss(x) for x in coeffs])
    if len(c) > 2 and len(up_gcd(c, up_deriv(c))) > 1:
        raise NotSquarefree("polynomial has a repeated root")


def _approx_roots(centers, bits):
    ctx = mpmath.MPContext()
    ctx.prec = bits
    desc = [_to_mpc(ctx, c) for c in reversed(centers)]
    roots = ctx.polyroots(desc, maxsteps=50 + 2 * bits, extraprec=bits, cleanup=True)
    if not isinstance(roots, (list, tuple)):
        roots = [roots]
    out = []
    for z in roots:
        z = ctx.mpc(z)
        out.append(GaussRat(_mpf_to_fraction(z.real), _mpf_to_fraction(z.imag)))
    return out


def _round_g(c: GaussRat, bits: int) -> GaussRat:
    s = 1 << bits
    return GaussRat(Fraction(round(c.re * s), s), Fraction(round(c.im * s), s))


def krawczyk(fb, dfb, c: GaussRat, rho: Fraction, prec: int) -> bool:
    """Krawczyk inclusion test on the disk of radius ``rho`` around ``c``."""
    try:
        fc = horner(fb, Ball(c, 0, prec))
        dfc = horner(dfb, Ball(c, 0, prec))
        if not dfc.center:
            return False
        Y = _round_g(dfc.center.inverse(), prec)
        X = Ball(c, rho, prec)
        dfX = horner(dfb, X)
        K = Ball(c, 0, prec) - Y * fc + (1 - Y * dfX) * Ball(0, rho, prec)
    except BallDivisionError:
        return False
    return K.inside(X, strict=True)


def _min_dist(approx, i):
    best = None
    for j, other in enumerate(approx):
        if j != i:
            d = (approx[i] - other).abs_lower()
            if best is None or d < best:
                best = d
    return best


def isolate_roots(coeffs, real_poly=None, exact=None, bits: int = 64, max_bits: int = 1 << 14) -> RootIsolation:
    """Isolating disks for all roots of ``sum coeffs[k] z^k``.

    ``coeffs`` may be rationals, Gaussian rationals or balls.  For exact input
    squarefreeness is checked first.  ``real_poly`` asserts that the true
    polynomial is real (it is inferred for exact input); real roots then get a
    degenerate imaginary box.
    """
    balls = [to_ball(c) for c in coeffs]
    while balls and not balls[-1].radius and not balls[-1].center:
        balls.pop()
    if exact is None:
        exact = all(b.radius == 0 for b in balls)
    if real_poly is None:
        real_poly = exact and all(b.center.im == 0 for b in balls)
    deg = len(balls) - 1
    if deg < 1:
        raise ValueError("polynomial must have degree at least 1")
    if balls[-1].contains_zero():
        raise PrecisionFailure("leading coefficient is not certified nonzero")
    if exact:
        check_squarefree([b.center for b in balls])
    dballs = [balls[k] * k for k in range(1, deg + 1)]
    centers = [b.center for b in balls]
    while bits <= max_bits:
        result = _try_isolate(balls, dballs, centers, deg, real_poly, bits)
        if result is not None:
            return result
        bits *= 2
    raise PrecisionFailure("root isolation did not converge; coefficients too coarse or clustered roots")


def _try_isolate(balls, dballs, centers, deg, real_poly, bits):
    try:
        approx = _approx_roots(centers, bits)
    except mpmath.libmp.NoConvergence:
        return None
    if len(approx) != deg:
        return None
    prec = bits + 16
    disks, reals = [], []
    for i, a in enumerate(approx):
        a = _round_g(a, bits)
        md = _min_dist(approx, i)
        rho0 = md / 4 if md else (a.abs_upper() + 1) / 4
        if rho0 <= 0:
            return None
        found = None
        rho = rho0
        floor = Fraction(1, 1 << max(bits - 8, 8))
        tries = []
        if real_poly and abs(a.im) <= rho0:
            tries.append(True)
        tries.append(False)
        for as_real in tries:
            c = GaussRat(a.re, 0) if as_real else a
            rho = rho0
            while rho >= floor:
                if krawczyk(balls, dballs, c, rho, prec):
                    # a much tighter disk sharpens the separation bound when it also passes
                    tight = rho / (1 << 20)
                    if tight >= floor and krawczyk(balls, dballs, c, tight, prec):
                        rho = tight
                    found = (Ball(c, rho), as_real)
                    break
                rho /= 16
            if found:
                break
        if found is None:
            return None
        disks.append(found[0])
        reals.append(found[1])
    for i in range(deg):
        for j in range(i + 1, deg):
            if disks[i].overlaps(disks[j]):
                return None
    order = sorted(range(deg), key=lambda k: (disks[k].center.re, disks[k].center.im))
    disks = [disks[k] for k in order]
    reals = [reals[k] for k in order]
    sep = None
    for i in range(deg):
        for j in range(i + 1, deg):
            d = disks[i].distance_lower(disks[j])
            if sep is None or d < sep:
                sep = d
    if sep is not None:
        sep = _round_down(sep * Fraction(1023, 1024))
    return RootIsolation(disks, reals, sep)


def _round_down(x: Fraction, bits: int = 40) -> Fraction:
    if x <= 0:
        return Fraction(0)
    e = x.numerator.bit_length() - x.denominator.bit_length()
    scale = bits - e
    if scale >= 0:
        return Fraction((x.numerator << scale) // x.denominator, 1 << scale)
    return Fraction(x.numerator // (x.denominator << -scale) << -scale)


def refine_root(coeffs, disk: Ball, target: Fraction, real: bool = False) -> Ball:
    """Shrink an isolating disk to radius <= ``target``, staying inside ``disk``.

    Newton steps in exact rational arithmetic (rounded to the working precision)
    give the new centre; Krawczyk certifies the new disk.
    """
    balls = [to_ball(c) for c in coeffs]
    deg = len(balls) - 1
    dballs = [balls[k] * k for k in range(1, deg + 1)]
    if disk.radius <= target:
        return disk
    c = disk.center
    bits = max(64, 2 * (-_log2_floor(target)) + 16)
    prec = bits + 16
    for _ in range(200):
        fc = horner(balls, Ball(c, 0, prec)).center
        dfc = horner(dballs, Ball(c, 0, prec)).center
        if not dfc:
            break
        c_new = _round_g(c - fc / dfc, bits)
        if real:
            c_new = GaussRat(c_new.re, 0)
        step = (c_new - c).abs_upper()
        c = c_new
        if step * 4 < target:
            break
    rho = target
    while rho * (1 << 40) > target:
        cand = Ball(c, rho)
        if cand.inside(disk) and krawczyk(balls, dballs, c, rho, prec):
            return cand
        rho /= 2
    raise PrecisionFailure("could not refine root disk")


def _log2_floor(x: Fraction) -> int:
    return x.numerator.bit_length() - x.denominator.bit_length()
