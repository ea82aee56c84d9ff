"""Independent checks of a descent output against its problem.

Every passing entry carries a witness a third party can re-check: an exact
identity (a residue that is literally zero, a polynomial value that is a
nonzero rational) or a certified rational bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..algnum import alg_is_zero_embedded, eval_tower_at_point, specialize_modulus
from ..cascade import replay_cascade, verify_certificate
from ..errors import (CascadeMismatch, EquidescentError, GuardExceeded, PoleAtPoint,
                      PrecisionFailure, RelationNotSatisfiedByInput, TraceDivergence)
from ..exactcore.mpoly import MPoly
from ..exactcore.numbers import fmt_rat
from ..numeric.ball import BallDivisionError
from ..numeric.evaluate import eval_tower
from ..numeric.track import binding_enclosure, track_root
from .groebner import buchberger, compare_traces, hilbert_function

__all__ = [
    "CheckResult",
    "VerificationReport",
    "check_support_and_closeness",
    "check_specialization",
    "check_relations",
    "check_cascade_match",
    "groebner_trace_compare",
    "relation_variables",
    "auto_relations",
    "verify_output",
]

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


@dataclass
class CheckResult:
    name: str
    status: str
    witness: dict = field(default_factory=dict)
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == PASS


@dataclass
class VerificationReport:
    entries: list = field(default_factory=list)

    def add(self, entry: CheckResult):
        self.entries.append(entry)
        return entry

    @property
    def status(self) -> str:
        if all(e.status == PASS for e in self.entries):
            return PASS
        if any(e.status == FAIL for e in self.entries):
            return FAIL
        return INCONCLUSIVE

    def get(self, name: str):
        for e in self.entries:
            if e.name == name:
                return e
        return None


# -- support and closeness --------------------------------------------------------------

def check_support_and_closeness(problem, out, eps: Fraction = None) -> list:
    """Support equality (exact) and certified ``|g - g'| < eps`` per coefficient."""
    eps = Fraction(problem.eps if eps is None else eps)
    F = problem.presentation
    support_bad = []
    for i, (g, h) in enumerate(zip(problem.inputs, out.outputs)):
        for e in set(g.terms) | set(h.terms):
            a = g.terms.get(e)
            b = h.terms.get(e)
            in_nz = a is not None and not a.is_zero()
            out_nz = b is not None and not alg_is_zero_embedded(b)
            if in_nz != out_nz:
                support_bad.append((i, e))
    support = CheckResult("support", PASS if not support_bad else FAIL,
                          {"terms": sum(len(g.terms) for g in problem.inputs)},
                          "" if not support_bad else f"support differs at {support_bad}")
    pending = []
    for i, (g, h) in enumerate(zip(problem.inputs, out.outputs)):
        for e, a in g.terms.items():
            b = h.terms.get(e)
            if b is None:
                b = out.algebra.domain().zero
            pending.append(((i, e), a, b))
    bounds = {}
    failed = None
    if F.r == 0:
        # the identity descent maps every coefficient to itself
        for key, a, b in pending:
            bounds[key] = Fraction(0)
        pending = []
    p = 64
    cap = problem.precision_cap
    while pending and failed is None:
        if p > cap:
            break
        try:
            tballs, zball = binding_enclosure(F, p)
        except PrecisionFailure:
            break
        still = []
        for key, a, b in pending:
            try:
                diff = eval_tower(a, tballs, zball, p + 32) - b.ball(p + 32)
            except BallDivisionError:
                still.append((key, a, b))
                continue
            if diff.abs_upper() < eps:
                bounds[key] = diff.abs_upper()
            elif diff.abs_lower() > eps:
                failed = (key, diff.abs_lower())
                break
            else:
                still.append((key, a, b))
        pending = still
        p *= 2
    wit = {"eps": eps, "bounds": bounds}
    if failed is not None:
        key, lo = failed
        wit["violation"] = {"coefficient": key, "lower_bound": lo}
        closeness = CheckResult("closeness", FAIL, wit,
                                f"coefficient {key} differs by more than {fmt_rat(eps)}")
    elif pending:
        closeness = CheckResult("closeness", INCONCLUSIVE, wit, "precision cap reached")
    else:
        wit["max_bound"] = max(bounds.values(), default=Fraction(0))
        closeness = CheckResult("closeness", PASS, wit)
    return [support, closeness]


# -- specialization ----------------------------------------------------------------------

def check_specialization(problem, out) -> CheckResult:
    """The algebra is P(q, z), the embedding is the continued root, outputs are exact images."""
    F = problem.presentation
    A = out.algebra
    try:
        if F.r:
            ref = specialize_modulus(F, out.q)
            tr = track_root(F, out.q)
            if ref.modulus != A.modulus:
                return CheckResult("specialization", FAIL, {}, "modulus is not P(q, z)")
            if tr.index != A.selected:
                return CheckResult("specialization", FAIL, {}, "embedding is not the continued root")
        for i, (g, h) in enumerate(zip(problem.inputs, out.outputs)):
            for e, a in g.terms.items():
                v = eval_tower_at_point(a, A, out.q)
                b = h.terms.get(e)
                if not (v.is_structural_zero() if b is None else (v - b).is_structural_zero()):
                    return CheckResult("specialization", FAIL, {"coefficient": (i, e)},
                                       "output coefficient is not the image of the input coefficient")
            for e, b in h.terms.items():
                if e not in g.terms and not b.is_structural_zero():
                    return CheckResult("specialization", FAIL, {"coefficient": (i, e)},
                                       "output has a term the input lacks")
    except (PoleAtPoint, EquidescentError) as exc:
        return CheckResult("specialization", FAIL, {}, str(exc))
    return CheckResult("specialization", PASS, {"modulus": A.modulus_str(), "embedding": A.selected})


# -- relations -------------------------------------------------------------------------------

def relation_variables(problem, mapping=None):
    """Coefficient positions ``(poly index, exponent)`` standing for y1, y2, ...

    By default only coefficients that are not rational constants get a
    number, in input order and grlex-descending order within each input.
    """
    if mapping is not None:
        return list(mapping)
    out = []
    for i, g in enumerate(problem.inputs):
        for e, c in g.sorted_terms():
            if not c.is_rational_constant():
                out.append((i, e))
    return out


def auto_relations(problem, mapping=None):
    """Relations known to hold among the input coefficients.

    The defining relation of z (denominators cleared) when z and every t_i
    occur as coefficients, and ``y_a - lambda y_b`` for rationally
    proportional pairs.
    """
    F = problem.presentation
    pos = relation_variables(problem, mapping)
    vals = [problem.inputs[i].terms[e] for i, e in pos]
    m = len(pos)
    rels = []
    if F.r + 1 <= m or (F.r == 0 and m >= 1):
        targets = [F.t(i) for i in range(F.r)] + [F.z]
        idx = []
        for tv in targets:
            hit = next((k for k, v in enumerate(vals) if v == tv), None)
            idx.append(hit)
        if all(k is not None for k in idx) and F.d > 1:
            Pc = F.cleared_P()
            images = [MPoly.gen(m, k) for k in idx]
            rels.append(Pc.compose(images))
    for a in range(m):
        for b in range(a + 1, m):
            va, vb = vals[a], vals[b]
            if va.is_zero() or vb.is_zero():
                continue
            ratio = va / vb
            lam = ratio.as_rational()
            if lam is not None:
                rels.append(MPoly.gen(m, a) - MPoly.gen(m, b).scale(lam))
    return rels


def _eval_relation(rel: MPoly, values, one):
    acc = None
    for e, c in rel.terms.items():
        term = one * c
        for k, p in enumerate(e):
            if p:
                term = term * values[k] ** p
        acc = term if acc is None else acc + term
    return acc if acc is not None else one * 0


def check_relations(problem, out, relations, mapping=None) -> CheckResult:
    """Every relation that vanishes on the input coefficients vanishes on the outputs."""
    F = problem.presentation
    pos = relation_variables(problem, mapping)
    ins = [problem.inputs[i].terms.get(e, F.zero) for i, e in pos]
    dom = out.algebra.domain()
    outs = [out.outputs[i].terms.get(e, dom.zero) for i, e in pos]
    results = []
    for k, rel in enumerate(relations):
        if rel.nvars != len(pos):
            raise RelationNotSatisfiedByInput(
                f"relation {k + 1} uses {rel.nvars} variables, {len(pos)} coefficients are numbered")
        vin = _eval_relation(rel, ins, F.one)
        if not vin.is_zero():
            raise RelationNotSatisfiedByInput(f"relation {k + 1} does not vanish on the input coefficients")
        vout = _eval_relation(rel, outs, dom.one)
        ok = alg_is_zero_embedded(vout)
        results.append({"relation": rel.to_str([f"y{j + 1}" for j in range(rel.nvars)]),
                        "residue": str(vout), "structural_zero": vout.is_structural_zero(),
                        "holds": ok})
    status = PASS if all(r["holds"] for r in results) else FAIL
    return CheckResult("relations", status, {"variables": pos, "results": results})


# -- cascade --------------------------------------------------------------------------------

def check_cascade_match(problem, out) -> CheckResult:
    """Replay the recorded cascade over the outputs; (d_j, l_j) must agree and units stay nonzero."""
    cert = out.certificate
    try:
        verify_certificate(cert, problem.inputs)
    except CascadeMismatch as exc:
        return CheckResult("cascade", FAIL, {"side": "input", "level": exc.level}, str(exc))
    try:
        consts, levels, final = replay_cascade(out.outputs, cert)
    except CascadeMismatch as exc:
        return CheckResult("cascade", FAIL, {"side": "output", "level": exc.level}, str(exc))
    shape_in = cert.shape()
    shape_out = tuple((lv.d, lv.l) for lv in levels)
    units = [str(u) for u in [lv.e for lv in levels[1:]] + ([final] if final is not None else [])]
    return CheckResult("cascade", PASS if shape_in == shape_out else FAIL,
                       {"shape": shape_in, "output_shape": shape_out, "output_units": units,
                        "k0": cert.k0})


# -- groebner --------------------------------------------------------------------------------

def groebner_trace_compare(problem, out, order: str = None) -> CheckResult:
    order = order or problem.order
    try:
        a = buchberger(problem.inputs, order)
        b = buchberger(out.outputs, order)
    except GuardExceeded as exc:
        return CheckResult("groebner", INCONCLUSIVE, {"order": order}, str(exc))
    wit = {"order": order, "steps": len(a.trace), "lt_ideal": a.lt_ideal,
           "output_lt_ideal": b.lt_ideal,
           "hilbert": hilbert_function(a.lt_ideal, problem.n)}
    try:
        compare_traces(a, b)
    except TraceDivergence as exc:
        return CheckResult("groebner", FAIL, wit, str(exc))
    return CheckResult("groebner", PASS, wit)


def verify_output(problem, out, relations=None, mapping=None, order=None) -> VerificationReport:
    """Run every check; relations default to the problem's plus the automatic ones."""
    report = VerificationReport()
    for entry in check_support_and_closeness(problem, out):
        report.add(entry)
    report.add(check_specialization(problem, out))
    rels = list(problem.relations if relations is None else relations)
    mapping = mapping if mapping is not None else problem.relation_map
    rels = rels + [r for r in auto_relations(problem, mapping) if r not in rels]
    try:
        report.add(check_relations(problem, out, rels, mapping))
    except RelationNotSatisfiedByInput as exc:
        report.add(CheckResult("relations", FAIL, {}, f"inapplicable relation: {exc}"))
    report.add(check_cascade_match(problem, out))
    report.add(groebner_trace_compare(problem, out, order))
    return report
