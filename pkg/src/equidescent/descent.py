"""Choosing the rational point q and specializing the input polynomials at it.

The pipeline: shrink epsilon until the bad locus is certified absent from the
2 epsilon polydisk and every nonzero coefficient is bounded away from zero,
build the cascade over the tower, search a grid of rational points near the
bindings, follow z(t) to z(q), and map every coefficient through the
homomorphism ``t -> q, z -> z mod P(q, z)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .algnum import AlgNum, EtaleAlgebra, _nc, eval_tower_at_point, specialize_modulus
from .cascade import CascadeCertificate, build_cascade, replay_cascade
from .errors import (CascadeMismatch, DiscriminantVanishes, PathUncertifiable, PoleAtPoint,
                     PrecisionFailure, SearchExhausted, ValidationError)
from .exactcore.mpoly import MPoly, grlex_key
from .exactcore.numbers import GaussRat, as_gauss
from .numeric.ball import Ball, BallDivisionError
from .numeric.certify import TailBounds, certify_ball_nonvanishing, tail_constants
from .numeric.evaluate import eval_tower, exact_point_value
from .numeric.roots import isolate_roots
from .numeric.track import BaseRoot, binding_enclosure, select_root, track_root, z_ball

__all__ = [
    "DescentProblem",
    "DescentOutput",
    "coefficient_positions",
    "choose_rational_point",
    "descend",
    "shrink_epsilon",
]

DEFAULT_GRID_CAP = 12
CANDIDATES_PER_LEVEL = 32
_SHRINK_LIMIT = 60


@dataclass
class DescentProblem:
    presentation: object
    inputs: list
    eps: Fraction
    homogeneous: bool = False
    names: list = None
    relations: list = field(default_factory=list)
    relation_map: list = None
    order: str = "grlex"
    grid_cap: int = DEFAULT_GRID_CAP
    precision_cap: int = 1 << 12
    min_unit: Fraction = None

    def __post_init__(self):
        self.eps = Fraction(self.eps)
        if self.eps <= 0:
            raise ValidationError("epsilon must be positive")
        if not self.inputs:
            raise ValidationError("at least one input polynomial is required")
        n = self.inputs[0].nvars
        for g in self.inputs:
            if g.nvars != n:
                raise ValidationError("inputs must share the variable count")
            if self.homogeneous and not g.is_homogeneous():
                raise ValidationError("homogeneous flag set but an input is not homogeneous")
        if self.names is None:
            self.names = [f"x{i + 1}" for i in range(n)]

    @property
    def n(self) -> int:
        return self.inputs[0].nvars

    @property
    def ground(self) -> str:
        return self.presentation.ground


@dataclass
class DescentOutput:
    q: tuple
    algebra: EtaleAlgebra
    outputs: list
    certificate: CascadeCertificate
    achieved_eps: Fraction
    eps_used: Fraction
    conditions: dict
    tails: TailBounds = None
    eta: object = None
    grid_level: int = 0

    @property
    def delta(self):
        return self.algebra.separation


def coefficient_positions(gs):
    """``(poly index, exponent)`` of every nonzero coefficient, polys in order, grlex descending."""
    out = []
    for i, g in enumerate(gs):
        for e, _ in g.sorted_terms(grlex_key):
            out.append((i, e))
    return out


def _nonzero_coeffs(gs):
    return [(i, e, c) for i, g in enumerate(gs) for e, c in g.sorted_terms(grlex_key)]


def _units(cert: CascadeCertificate):
    """Every field element whose specialization must stay nonzero, labelled."""
    out = [(f"c{r + 1}", c) for r, c in enumerate(cert.constants)]
    for lv in cert.levels[1:]:
        out.append((f"e{lv.j}", lv.e))
    if cert.final_unit is not None:
        out.append((f"e{cert.k0 - 1}", cert.final_unit))
    return out


def _coeff_ball(a, tballs, zball, prec):
    return eval_tower(a, tballs, zball, prec)


# -- epsilon shrink ------------------------------------------------------------------

def _locus(problem):
    """Polynomials in t that must not vanish near the bindings."""
    F = problem.presentation
    polys = list(F.bad_locus())
    for g in problem.inputs:
        for c in g.terms.values():
            for den in c.denominators():
                if den not in polys:
                    polys.append(den)
    return polys


def shrink_epsilon(problem, base: BaseRoot):
    """The working epsilon and the certificate data behind it.

    Halve epsilon until the bad locus (discriminant numerator and all pole
    denominators) is certified zero-free on the closed 2 epsilon polydisk,
    then cap it by half a certified lower bound on the smallest nonzero |g|.
    """
    F = problem.presentation
    eps = problem.eps
    polys = _locus(problem)
    cert = None
    for _ in range(_SHRINK_LIMIT):
        cert = certify_ball_nonvanishing(polys, F.bindings, 2 * eps)
        if cert.ok:
            break
        eps /= 2
    else:
        raise PrecisionFailure("cannot certify a neighbourhood of the bindings free of the bad locus")
    coeffs = [c for _, _, c in _nonzero_coeffs(problem.inputs)]
    lb = _coefficient_lower_bound(F, coeffs, problem.precision_cap)
    info = {"eps_input": problem.eps, "eps_certified": eps, "radius": 2 * eps,
            "cells": cert.cells, "depth": cert.depth, "coefficient_lower_bound": lb}
    if lb is not None and lb / 2 < eps:
        eps = lb / 2
    info["eps_used"] = eps
    return eps, info


def _coefficient_lower_bound(F, coeffs, cap):
    """Certified lower bound for min |g(t, z(t))| over the nonzero coefficients."""
    lows = []
    pending = [c for c in coeffs if c.as_rational() is None]
    for c in coeffs:
        v = c.as_rational()
        if v is not None:
            lows.append(abs(v))
    p = 32
    while pending:
        if p > cap:
            raise PrecisionFailure("cannot bound a coefficient away from zero")
        tballs, zball = binding_enclosure(F, p)
        still = []
        for c in pending:
            try:
                b = _coeff_ball(c, tballs, zball, p + 32)
            except BallDivisionError:
                still.append(c)
                continue
            if b.contains_zero():
                still.append(c)
            else:
                lows.append(b.abs_lower())
        pending = still
        p *= 2
    return min(lows) if lows else None


# -- the grid ----------------------------------------------------------------------

def _axis_values(center: Fraction, radius: Fraction, den: int, limit: int):
    """Rationals ``k/den`` within ``radius`` of ``center``, nearest first."""
    lo = -((-(center - radius) * den).__floor__())  # ceil
    hi = ((center + radius) * den).__floor__()
    vals = [Fraction(k, den) for k in range(lo, hi + 1)]
    vals.sort(key=lambda v: (abs(v - center), v))
    return vals[:limit]


def _coordinate_candidates(c: GaussRat, radius: Fraction, den: int, real: bool, limit: int = 8):
    if radius <= 0:
        return []
    if real:
        return [GaussRat(v) for v in _axis_values(c.re, radius, den, limit)]
    res = _axis_values(c.re, radius, den, limit)
    ims = _axis_values(c.im, radius, den, limit)
    out = [GaussRat(a, b) for a in res for b in ims
           if (GaussRat(a, b) - c).abs_upper() <= radius]
    out.sort(key=lambda w: ((w - c).abs_upper(), w.re, w.im))
    return out[:limit]


def grid_candidates(centers, radii, m: int, real: bool, limit: int = CANDIDATES_PER_LEVEL):
    """Points with coordinates in ``10^-m`` Z (+ i 10^-m Z) inside the allowed disks."""
    den = 10 ** m
    per = [_coordinate_candidates(c, r, den, real) for c, r in zip(centers, radii)]
    if any(not p for p in per):
        return []
    pts = list(product(*per))

    def key(pt):
        dist = max((w - c).abs_upper() for w, c in zip(pt, centers))
        return (dist, tuple((w.re, w.im) for w in pt))

    pts.sort(key=key)
    return pts[:limit]


# -- conditions ------------------------------------------------------------------------

def _check_exact(problem, cert, q):
    """Condition (i): exact nonvanishing at q.  Returns a log or raises."""
    F = problem.presentation
    qv = [as_gauss(x) for x in q]
    log = []
    disc = F.discriminant_numerator()
    if F.d > 1:
        v = disc.evaluate(qv)
        if not v:
            raise DiscriminantVanishes("discriminant numerator vanishes at q")
        log.append(("discriminant", disc, v))
    dens = list(F.pole_denominators())
    for g in problem.inputs:
        for c in g.terms.values():
            dens.extend(c.denominators())
    for _, u in _units(cert):
        dens.extend(u.denominators())
    seen = []
    for den in dens:
        if den in seen:
            continue
        seen.append(den)
        v = den.evaluate(qv)
        if not v:
            raise PoleAtPoint("a denominator vanishes at q")
        log.append(("denominator", den, v))
    return log


def _closeness(problem, A: EtaleAlgebra, outputs_coeffs, target: Fraction):
    """Condition (iv): certified |g - g'| <= target for every coefficient.

    Returns the largest certified bound, or None when some coefficient is
    certified farther than ``target``.
    """
    F = problem.presentation
    pending = list(outputs_coeffs)
    worst = Fraction(0)
    bounds = {}
    p = 64
    while pending:
        if p > problem.precision_cap:
            raise PrecisionFailure("closeness could not be decided at the precision cap")
        tballs, zball = binding_enclosure(F, p)
        still = []
        for key, a, b in pending:
            try:
                diff = _coeff_ball(a, tballs, zball, p + 32) - b.ball(p + 32)
            except BallDivisionError:
                still.append((key, a, b))
                continue
            up = diff.abs_upper()
            if up <= target:
                bounds[key] = up
                worst = max(worst, up)
            elif diff.abs_lower() > target:
                return None, bounds
            else:
                still.append((key, a, b))
        pending = still
        p *= 2
    return worst, bounds


def _try_candidate(problem, cert, base, q, eps, tails):
    F = problem.presentation
    exact_log = _check_exact(problem, cert, q)
    tr = track_root(F, q, base)
    A = specialize_modulus(F, q, isolation=tr.isolation, selected=tr.index)
    units_log = []
    for label, u in _units(cert):
        v = eval_tower_at_point(u, A)
        if not v:
            return None, f"unit {label} vanishes at the embedding"
        if problem.min_unit is not None and v.ball(64).abs_lower() < problem.min_unit:
            return None, f"unit {label} is below the configured minimum"
        units_log.append((label, u, v))
    dom = A.domain()
    outputs = []
    triples = []
    for i, g in enumerate(problem.inputs):
        terms = {}
        for e, c in g.terms.items():
            v = eval_tower_at_point(c, A)
            terms[e] = v
            triples.append(((i, e), c, v))
        outputs.append(MPoly(g.nvars, terms, dom))
    for i, (g, h) in enumerate(zip(problem.inputs, outputs)):
        if set(g.terms) != set(h.terms):
            return None, f"support of input {i + 1} changes"
    worst, bounds = _closeness(problem, A, triples, eps / 2)
    if worst is None:
        return None, "a coefficient moves by more than epsilon/2"
    try:
        replay_cascade(outputs, cert)
    except CascadeMismatch as exc:
        return None, f"cascade mismatch: {exc}"
    log = {
        "exact": exact_log,
        "track_steps": tr.steps,
        "units": units_log,
        "closeness": bounds,
    }
    return (A, outputs, worst, log), None


def choose_rational_point(problem, cert, base: BaseRoot, eps: Fraction, tails: TailBounds = None):
    """The first grid point satisfying conditions (i)-(iv), with its witnesses."""
    F = problem.presentation
    real = F.ground == "R"
    rejected = []
    for m in range(1, problem.grid_cap + 1):
        # bindings to well below the grid mesh and the search radius
        p = max(32, 4 * m + 16)
        while True:
            tballs = [b.refine(p) for b in F.bindings]
            rad = max((b.radius for b in tballs), default=Fraction(0))
            if rad * 64 <= eps:
                break
            p *= 2
        centers = [b.center for b in tballs]
        radii = [eps / 2 - b.radius for b in tballs]
        for q in grid_candidates(centers, radii, m, real):
            try:
                found, why = _try_candidate(problem, cert, base, q, eps, tails)
            except (PoleAtPoint, DiscriminantVanishes, PathUncertifiable) as exc:
                rejected.append((q, str(exc)))
                continue
            if found is None:
                rejected.append((q, why))
                continue
            A, outputs, worst, log = found
            dist = max((w - c).abs_upper() + b.radius for w, c, b in zip(q, centers, tballs))
            log["distance"] = {"bound": dist, "limit": eps / 2, "binding_precision": p}
            log["grid"] = {"level": m, "denominator": 10 ** m, "rejected": rejected}
            return tuple(_nc(x) for x in q), A, outputs, worst, log
    raise SearchExhausted(f"no admissible rational point up to grid level {problem.grid_cap}")


# -- driver -----------------------------------------------------------------------------

def _identity_descent(problem):
    """r = 0: the coefficients are already algebraic; map them into the algebra of P."""
    F = problem.presentation
    coeffs = [c.constant_value() for c in F.P]
    iso = isolate_roots(coeffs)
    idx = 0
    if F.d > 1:
        if F.z_selector is None:
            raise ValidationError("a z-selector is needed when d > 1")
        idx = select_root(iso, F.z_selector)
        if idx is None:
            raise ValidationError("the z-selector does not isolate exactly one root of P")
    A = EtaleAlgebra(coeffs, iso, (), idx)
    cert = build_cascade(problem.inputs, F, problem.homogeneous)
    dom = A.domain()
    outputs = [MPoly(g.nvars, {e: eval_tower_at_point(c, A, ()) for e, c in g.terms.items()}, dom)
               for g in problem.inputs]
    units = [(label, u, eval_tower_at_point(u, A, ())) for label, u in _units(cert)]
    replay_cascade(outputs, cert)
    log = {"exact": [], "units": units, "closeness": {}, "identity": True}
    return DescentOutput((), A, outputs, cert, Fraction(0), problem.eps, log)


def descend(problem: DescentProblem) -> DescentOutput:
    F = problem.presentation
    if F.r == 0:
        return _identity_descent(problem)
    base = z_ball(F, cap=problem.precision_cap)
    eps, shrink_info = shrink_epsilon(problem, base)
    cert = build_cascade(problem.inputs, F, problem.homogeneous)
    tails = tail_constants(F, eps, F.bindings)
    tails.eta = base.eta
    q, A, outputs, worst, log = choose_rational_point(problem, cert, base, eps, tails)
    tails.delta = A.separation
    log["shrink"] = shrink_info
    return DescentOutput(q, A, outputs, cert, worst, eps, log, tails, base.eta, log["grid"]["level"])
