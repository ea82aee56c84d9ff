"""The selected root z(t) of P(t, .) and its certified continuation to a rational point.

Continuation argument.  Let S be a convex parameter set (a product of disks)
and X a disk.  If the Krawczyk test succeeds on X for the polynomial whose
coefficients are the ball enclosures of the coefficients of P over all of S,
then for every parameter in S the disk X holds exactly one root, a simple
one.  That root depends continuously on the parameter, so if it is the
followed root at one point of S it is the followed root everywhere on S.

The path runs from the bindings t to their rational center c (the parameter
set is the binding ball itself) and then along straight pieces from c to q,
each covered by the coordinate-wise disk hull of the piece.  Step lengths
double after a success and halve after a failure; a pole or discriminant
point on the path makes the steps collapse, reported as PathUncertifiable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import PathUncertifiable, PoleAtPoint, PrecisionFailure, ValidationError
from ..exactcore.numbers import GaussRat, as_gauss
from .ball import Ball, BallDivisionError
from .evaluate import coefficient_balls, exact_point_value, to_ball
from .roots import RootIsolation, isolate_roots, krawczyk, refine_root

__all__ = ["BaseRoot", "TrackResult", "z_ball", "track_root", "specialize_coeffs", "select_root",
           "certify_piece", "binding_enclosure"]

MAX_STEPS = 4096
_MIN_STEP = Fraction(1, 1 << 40)

@dataclass
class BaseRoot:
    """Isolation of the roots of P at the bindings and the index of z among them."""

    isolation: RootIsolation
    index: int
    tballs: list
    precision: int

    @property
    def ball(self) -> Ball:
        return self.isolation.balls[self.index]

    @property
    def eta(self):
        return self.isolation.separation


@dataclass
class TrackResult:
    isolation: RootIsolation
    index: int
    steps: int
    path: list = field(default_factory=list)

    @property
    def ball(self) -> Ball:
        return self.isolation.balls[self.index]

    @property
    def delta(self):
        return self.isolation.separation


def specialize_coeffs(F, point):
    """Exact coefficients of ``P(point, .)``; raises PoleAtPoint at a pole."""
    out = []
    for c in F.P:
        v = exact_point_value(c, list(point)) if F.r else c.constant_value()
        if v is None:
            raise PoleAtPoint("a coefficient of P has a pole at the point")
        out.append(v)
    return out


def select_root(isolation: RootIsolation, selector: Ball):
    """Index of the unique isolating disk meeting ``selector``, or None if not unique."""
    hits = [i for i, b in enumerate(isolation.balls) if b.overlaps(selector)]
    return hits[0] if len(hits) == 1 else None


def _real_bindings(F) -> bool:
    return F.ground == "R" and all(getattr(b, "real", True) for b in F.bindings)


def z_ball(F, start: int = 32, cap: int = 1 << 12) -> BaseRoot:
    """Isolate the roots of P(t, .) with interval coefficients and pick the selected one.

    Bindings are refined until the isolating disks are disjoint and exactly
    one of them meets the z-selector.
    """
    if F.d > 1 and F.z_selector is None:
        raise ValidationError("a z-selector is needed when d > 1")
    p = start
    last = None
    while p <= cap:
        tballs = [b.refine(p) for b in F.bindings]
        exact = all(b.radius == 0 for b in tballs)
        try:
            if exact:
                iso = isolate_roots(specialize_coeffs(F, [b.center for b in tballs]))
            else:
                coeffs = coefficient_balls(F.P, tballs, p + 32)
                iso = isolate_roots(coeffs, real_poly=_real_bindings(F), exact=False)
        except (PrecisionFailure, ZeroDivisionError) as exc:
            last = exc
            p *= 2
            continue
        if F.d == 1:
            return BaseRoot(iso, 0, tballs, p)
        idx = select_root(iso, F.z_selector)
        if idx is not None and iso.balls[idx].inside(F.z_selector):
            return BaseRoot(iso, idx, tballs, p)
        if exact:
            break
        last = None
        p *= 2
    if last is not None:
        raise PrecisionFailure(f"cannot isolate the roots of P at the bindings: {last}")
    raise ValidationError("the z-selector does not isolate exactly one root of P at the bindings")


def binding_enclosure(F, p: int, cap: int = 1 << 12):
    """Balls for the bindings and for z(t) of radius about ``2^-p`` (z as tight as certifiable)."""
    base = z_ball(F, start=max(32, p), cap=max(cap, p))
    zb = base.ball
    target = Fraction(1, 1 << p)
    if zb.radius > target:
        coeffs = (coefficient_balls(F.P, base.tballs, base.precision + 32)
                  if any(b.radius for b in base.tballs) else specialize_coeffs(F, [b.center for b in base.tballs]))
        try:
            zb = refine_root(coeffs, zb, target, real=base.isolation.real[base.index])
        except PrecisionFailure:
            pass
    return base.tballs, zb


def _norm_upper(v) -> Fraction:
    return max((as_gauss(x).abs_upper() for x in v), default=Fraction(0))


def _point(c, q, lam):
    return [ci + (qi - ci) * lam for ci, qi in zip(c, q)]


def _log2(x: Fraction) -> int:
    return x.numerator.bit_length() - x.denominator.bit_length()


def _is_real(disk: Ball, coeffs) -> bool:
    return disk.center.im == 0 and all(as_gauss(c).im == 0 for c in coeffs)


def _newton(coeffs, z: GaussRat, bits: int, iters: int = 6) -> GaussRat:
    """A few rounded Newton steps for an exact coefficient list (a predictor only)."""
    d = len(coeffs) - 1
    dco = [coeffs[k] * k for k in range(1, d + 1)]
    s = 1 << bits
    for _ in range(iters):
        f = Fraction(0) if not coeffs else as_gauss(0)
        for c in reversed(coeffs):
            f = f * z + c
        df = as_gauss(0)
        for c in reversed(dco):
            df = df * z + c
        if not df:
            break
        z = z - f / df
        z = GaussRat(Fraction(round(z.re * s), s), Fraction(round(z.im * s), s))
    return z


def certify_piece(F, params, disk: Ball, target_coeffs, prec: int = 64):
    """Certify that ``disk`` holds exactly one root of P over the parameter balls.

    ``params`` are balls covering a piece of the path and ``disk`` must
    contain the followed root at one of its points.  Returns a tight disk
    around the followed root of ``target_coeffs`` (the exact polynomial at
    the far end of the piece), or None when the test fails.
    """
    try:
        balls = coefficient_balls(F.P, params, prec)
    except BallDivisionError:
        return None
    dballs = [balls[k] * k for k in range(1, len(balls))]
    new_center = _newton(target_coeffs, disk.center, prec)
    mid = GaussRat((disk.center.re + new_center.re) / 2, (disk.center.im + new_center.im) / 2)
    half = (disk.center - new_center).abs_upper() / 2
    r = (half + disk.radius) * Fraction(3, 2) + Fraction(1, 1 << (prec // 2))
    X = Ball(mid, r)
    if not disk.inside(X) or not krawczyk(balls, dballs, X.center, X.radius, prec):
        return None
    try:
        return refine_root(target_coeffs, X, X.radius / 1024, real=_is_real(X, target_coeffs))
    except PrecisionFailure:
        return None


def _hull(a, b):
    """Coordinate-wise disks covering the segment from ``a`` to ``b``."""
    out = []
    for x, y in zip(a, b):
        c = GaussRat((x.re + y.re) / 2, (x.im + y.im) / 2)
        out.append(Ball(c, (x - y).abs_upper() / 2))
    return out


def track_root(F, q, base: BaseRoot = None, max_steps: int = MAX_STEPS) -> TrackResult:
    """Continue the selected root from the bindings to the rational point ``q``."""
    q = [as_gauss(x) for x in q]
    if len(q) != F.r:
        raise ValueError(f"point has {len(q)} coordinates, expected {F.r}")
    if base is None:
        base = z_ball(F)
    target = specialize_coeffs(F, q)
    if F.d == 1:
        return TrackResult(isolate_roots(target), 0, 0, [q])
    c = [b.center for b in base.tballs]
    disk = base.ball
    steps = 0
    path = [c]
    if any(b.radius for b in base.tballs):
        # from the true bindings to their rational centers
        disk = certify_piece(F, base.tballs, disk, specialize_coeffs(F, c), 64 + base.precision)
        steps += 1
        if disk is None:
            raise PathUncertifiable("cannot certify the root between the bindings and their centers")
    L = _norm_upper([qi - ci for ci, qi in zip(c, q)])
    lam = Fraction(0)
    dl = Fraction(1)
    s = c
    while L and lam < 1:
        if steps >= max_steps:
            raise PathUncertifiable(f"no certified path within {max_steps} steps")
        steps += 1
        dl = min(dl, 1 - lam)
        nxt = lam + dl
        s_new = q if nxt == 1 else _point(c, q, nxt)
        try:
            coeffs = specialize_coeffs(F, s_new)
        except PoleAtPoint:
            coeffs = None
        prec = max(64, 32 - _log2(disk.radius or Fraction(1, 1 << 64)))
        found = certify_piece(F, _hull(s, s_new), disk, coeffs, prec) if coeffs else None
        if found is None:
            dl /= 2
            if dl < _MIN_STEP:
                raise PathUncertifiable("the path comes too close to the discriminant or pole locus")
            continue
        lam, s, disk = nxt, s_new, found
        path.append(s)
        dl *= 2
    final = isolate_roots(target)
    while True:
        j = select_root(final, disk)
        if j is not None:
            return TrackResult(final, j, steps, path)
        if disk.radius < _MIN_STEP ** 4:
            raise PathUncertifiable("tracked disk does not single out a root at the endpoint")
        disk = refine_root(target, disk, disk.radius / 1024, real=_is_real(disk, target))
