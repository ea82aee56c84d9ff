"""JSON documents for problems, descent outputs, cascade certificates and reports.

Every number is an exact rational written as a string ``"a/b"`` (complex
values as ``{"re": ..., "im": ...}``); polynomials are expression strings in
the canonical graded-lex order.  Serialization is deterministic, so equal
objects give byte-identical documents.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .algnum import EtaleAlgebra, _box_index, parse_upoly
from .cascade import CascadeCertificate, CascadeLevel, LinearChange
from .descent import DescentOutput, DescentProblem
from .errors import ParseError, ValidationError
from .exactcore.mpoly import MPoly
from .exactcore.numbers import GaussRat, fmt_rat, parse_rat
from .exactcore.ratfunc import RatFunc, RatFuncField
from .exactcore.text import parse_expr
from .numeric.ball import Ball
from .numeric.certify import TailBounds
from .numeric.scalars import ComputableScalar
from .tower import FieldPresentation
from .verify.checks import CheckResult, VerificationReport, relation_variables

__all__ = [
    "dumps",
    "plain",
    "parse_scalar",
    "parse_P",
    "presentation_to_json",
    "presentation_from_json",
    "problem_to_json",
    "problem_from_json",
    "parse_problem",
    "dump_problem",
    "certificate_to_json",
    "certificate_from_json",
    "output_to_json",
    "output_from_json",
    "parse_output",
    "dump_output",
    "report_to_json",
    "report_from_json",
    "load_json",
]

FORMAT_VERSION = 1


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def load_json(text: str):
    try:
        return json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", location=(exc.lineno, exc.colno)) from None


def _reject_float(text):
    raise ParseError(f"floating-point literal {text} is not exact; write it as a string \"a/b\"")


# -- scalars -------------------------------------------------------------------------------

def _num(x):
    if isinstance(x, GaussRat):
        return fmt_rat(x.re) if x.im == 0 else {"re": fmt_rat(x.re), "im": fmt_rat(x.im)}
    return fmt_rat(x)


def _parse_num(v, where: str):
    try:
        if isinstance(v, dict):
            if set(v) != {"re", "im"}:
                raise ValueError("complex numbers need exactly the keys re and im")
            re, im = parse_rat(v["re"]), parse_rat(v["im"])
            return re if im == 0 else GaussRat(re, im)
        return parse_rat(v)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(str(exc), location=where) from None


def plain(x):
    """A JSON tree for witnesses and logs: rationals become strings, tuples lists."""
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, (Fraction, GaussRat)):
        return _num(x)
    if isinstance(x, Ball):
        return {"center": _num(x.center), "radius": fmt_rat(x.radius)}
    if isinstance(x, dict):
        if all(isinstance(k, str) for k in x):
            return {k: plain(v) for k, v in x.items()}
        return [[plain(k), plain(v)] for k, v in x.items()]
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    return str(x)


def parse_scalar(spec, where: str = "binding") -> ComputableScalar:
    """A binding: rational string, builtin name, complex rational or oracle record."""
    if isinstance(spec, dict):
        if "oracle" in spec:
            cmd = spec["oracle"]
            if isinstance(cmd, str):
                cmd = cmd.split()
            if not cmd or not all(isinstance(c, str) for c in cmd):
                raise ValidationError("oracle command must be a list of strings", location=where)
            return ComputableScalar.from_oracle(cmd, int(spec.get("index", 0)), bool(spec.get("real", True)))
        return ComputableScalar.rational(_parse_num(spec, where))
    if isinstance(spec, int) and not isinstance(spec, bool):
        return ComputableScalar.rational(Fraction(spec))
    if not isinstance(spec, str):
        raise ValidationError("expected a string or object", location=where)
    try:
        return ComputableScalar.rational(parse_rat(spec))
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return ComputableScalar.builtin(spec)
    except ValueError as exc:
        raise ValidationError(str(exc), location=where) from None


def _ball_to_json(b: Ball):
    return {"center": _num(b.center), "radius": fmt_rat(b.radius)}


def _ball_from_json(v, where: str) -> Ball:
    if not isinstance(v, dict):
        raise ValidationError("expected an object", location=where)
    if "box" in v:
        box = v["box"]
        if not isinstance(box, list) or len(box) != 4:
            raise ValidationError("box needs [re_lo, re_hi, im_lo, im_hi]", location=where)
        re_lo, re_hi, im_lo, im_hi = (_parse_num(x, where) for x in box)
        if re_lo > re_hi or im_lo > im_hi:
            raise ValidationError("empty box", location=where)
        c = GaussRat((re_lo + re_hi) / 2, (im_lo + im_hi) / 2)
        # the disk through the corners covers the box
        return Ball(c, (re_hi - re_lo) / 2 + (im_hi - im_lo) / 2)
    try:
        c = _parse_num(v["center"], where)
        r = parse_rat(v["radius"])
    except KeyError as exc:
        raise ValidationError(f"missing {exc.args[0]}", location=where) from None
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(str(exc), location=where) from None
    if r < 0:
        raise ValidationError("negative radius", location=where)
    return Ball(c, r)


# -- presentations -------------------------------------------------------------------------

def _t_names(r: int):
    return ["t"] if r == 1 else [f"t{i + 1}" for i in range(r)]


def parse_P(text: str, r: int):
    """Ascending RatFunc coefficients of a polynomial in z over Q(t)."""
    one = RatFunc.constant(r, 1)
    symbols = {}
    for i, name in enumerate(_t_names(r)):
        symbols[name] = MPoly.constant(1, RatFunc.from_poly(MPoly.gen(r, i)), _rf_domain(r))
        symbols[f"t{i + 1}"] = symbols[name]
    symbols["z"] = MPoly.gen(1, 0, _rf_domain(r))
    v = parse_expr(text, symbols)
    if not isinstance(v, MPoly):
        v = MPoly.constant(1, one * v, _rf_domain(r))
    deg = v.degree(0)
    return [v.coeff((k,)) for k in range(deg + 1)]


_RF = {}


def _rf_domain(r: int):
    dom = _RF.get(r)
    if dom is None:
        dom = _RF[r] = RatFuncField(r)
    return dom


def presentation_to_json(F: FieldPresentation) -> dict:
    out = {"ground": F.ground, "r": F.r, "d": F.d, "P": F.P_str(),
           "bindings": [b.spec() for b in F.bindings]}
    if F.z_selector is not None:
        out["z_selector"] = _ball_to_json(F.z_selector)
    return out


def presentation_from_json(doc: dict) -> FieldPresentation:
    try:
        ground = doc.get("ground", "R")
        r = doc["r"]
        d = doc["d"]
        P_text = doc["P"]
    except KeyError as exc:
        raise ValidationError("missing field", location=exc.args[0]) from None
    if ground not in ("R", "C"):
        raise ValidationError("ground must be R or C", location="ground")
    if not isinstance(r, int) or r < 0:
        raise ValidationError("r must be a nonnegative integer", location="r")
    if not isinstance(d, int) or d < 1:
        raise ValidationError("d must be a positive integer", location="d")
    try:
        P = parse_P(P_text, r)
    except ParseError as exc:
        raise ValidationError(str(exc), location="P") from None
    if len(P) - 1 != d:
        raise ValidationError(f"P has degree {len(P) - 1} in z, declared d = {d}", location="d")
    specs = doc.get("bindings", [])
    if not isinstance(specs, list) or len(specs) != r:
        raise ValidationError(f"expected {r} bindings", location="bindings")
    bindings = [parse_scalar(s, f"bindings[{i}]") for i, s in enumerate(specs)]
    if ground == "R" and not all(b.real for b in bindings):
        raise ValidationError("ground R needs real bindings", location="bindings")
    sel = None
    if "z_selector" in doc and doc["z_selector"] is not None:
        sel = _ball_from_json(doc["z_selector"], "z_selector")
        if ground == "R" and sel.center.im != 0:
            raise ValidationError("ground R needs a real z-selector", location="z_selector")
    elif d > 1:
        raise ValidationError("a z_selector is needed when d > 1", location="z_selector")
    return FieldPresentation(r, P, bindings, sel, ground)


# -- problems ----------------------------------------------------------------------------------

def _poly_symbols(F, names, n, domain=None):
    table = dict(F.symbols())
    dom = domain if domain is not None else F
    for i, name in enumerate(names):
        if name in table:
            raise ValidationError(f"variable name {name!r} clashes with a field generator", location="variables")
        table[name] = MPoly.gen(n, i, dom)
    return table


def _relation_symbols(m: int):
    return {f"y{j + 1}": MPoly.gen(m, j) for j in range(m)}


def problem_to_json(problem: DescentProblem) -> dict:
    F = problem.presentation
    doc = {"format": "equidescent-problem", "version": FORMAT_VERSION}
    doc.update(presentation_to_json(F))
    names = problem.names
    doc["variables"] = list(names)
    doc["polynomials"] = [g.to_str(names) for g in problem.inputs]
    doc["epsilon"] = fmt_rat(problem.eps)
    doc["homogeneous"] = problem.homogeneous
    doc["order"] = problem.order
    if problem.relations:
        m = problem.relations[0].nvars
        doc["relations"] = [rel.to_str([f"y{j + 1}" for j in range(m)]) for rel in problem.relations]
    if problem.relation_map is not None:
        doc["relation_variables"] = [[i, list(e)] for i, e in problem.relation_map]
    doc["grid_cap"] = problem.grid_cap
    doc["precision_cap"] = problem.precision_cap
    if problem.min_unit is not None:
        doc["min_unit"] = fmt_rat(problem.min_unit)
    return doc


def problem_from_json(doc: dict) -> DescentProblem:
    if not isinstance(doc, dict):
        raise ValidationError("a problem must be a JSON object")
    F = presentation_from_json(doc)
    polys = doc.get("polynomials")
    if not isinstance(polys, list) or not polys:
        raise ValidationError("polynomials must be a nonempty list", location="polynomials")
    names = doc.get("variables")
    if names is None:
        n = _guess_nvars(polys)
        names = [f"x{i + 1}" for i in range(n)]
    if not isinstance(names, list) or not names or not all(isinstance(x, str) for x in names):
        raise ValidationError("variables must be a nonempty list of names", location="variables")
    n = len(names)
    table = _poly_symbols(F, names, n)
    inputs = []
    for k, text in enumerate(polys):
        try:
            v = parse_expr(text, table)
        except ParseError as exc:
            raise ValidationError(str(exc), location=f"polynomials[{k}]") from None
        if not isinstance(v, MPoly):
            v = MPoly.constant(n, F.convert(v), F)
        inputs.append(v)
    try:
        eps = parse_rat(doc.get("epsilon", "1/100"))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(str(exc), location="epsilon") from None
    order = doc.get("order", "grlex")
    if order not in ("grlex", "lex"):
        raise ValidationError("order must be grlex or lex", location="order")
    relmap = doc.get("relation_variables")
    if relmap is not None:
        relmap = [(int(i), tuple(e)) for i, e in relmap]
        for i, e in relmap:
            if not 0 <= i < len(inputs) or len(e) != n:
                raise ValidationError("relation_variables entry out of range", location="relation_variables")
    problem = DescentProblem(F, inputs, eps, bool(doc.get("homogeneous", False)), list(names),
                             [], relmap, order, int(doc.get("grid_cap", 12)),
                             int(doc.get("precision_cap", 1 << 12)),
                             parse_rat(doc["min_unit"]) if doc.get("min_unit") is not None else None)
    rels = doc.get("relations", [])
    if rels:
        m = len(relation_variables(problem, relmap))
        table = _relation_symbols(m)
        for k, text in enumerate(rels):
            try:
                v = parse_expr(text, table)
            except ParseError as exc:
                raise ValidationError(str(exc), location=f"relations[{k}]") from None
            if not isinstance(v, MPoly):
                v = MPoly.constant(m, v)
            problem.relations.append(v)
    return problem


def _guess_nvars(polys) -> int:
    best = 0
    for text in polys:
        for m in re.finditer(r"\bx(\d+)\b", text):
            best = max(best, int(m.group(1)))
    if not best:
        raise ValidationError("cannot infer the variables; list them under 'variables'", location="variables")
    return best


def parse_problem(text: str) -> DescentProblem:
    return problem_from_json(load_json(text))


def dump_problem(problem: DescentProblem) -> str:
    return dumps(problem_to_json(problem))


# -- certificates ---------------------------------------------------------------------------

def _change_to_json(ch: LinearChange):
    return {"level": ch.level, "mu": [fmt_rat(m) for m in ch.mu]}


def _change_from_json(v) -> LinearChange:
    return LinearChange(int(v["level"]), tuple(parse_rat(m) for m in v["mu"]))


def _unit_str(u):
    return None if u is None else str(u)


def certificate_to_json(cert: CascadeCertificate, names) -> dict:
    return {
        "n": cert.n,
        "s": cert.s,
        "homogeneous": cert.homogeneous,
        "input_change": _change_to_json(cert.input_change),
        "constants": [str(c) for c in cert.constants],
        "factors": [f.to_str(names) for f in cert.factors],
        "stripped": [[i, why] for i, why in cert.stripped],
        "shape": [[d, l] for d, l in cert.shape()],
        "levels": [{"j": lv.j, "d": lv.d, "l": lv.l, "change": _change_to_json(lv.change),
                    "e": str(lv.e), "f": lv.f.to_str(names)} for lv in cert.levels],
        "k0": cert.k0,
        "final_unit": _unit_str(cert.final_unit),
    }


def certificate_from_json(doc: dict, F: FieldPresentation, names) -> CascadeCertificate:
    n = int(doc["n"])
    table = _poly_symbols(F, names, n)

    def poly(text):
        v = parse_expr(text, table)
        return v if isinstance(v, MPoly) else MPoly.constant(n, F.convert(v), F)

    def elem(text):
        return None if text is None else F.parse(text)

    levels = [CascadeLevel(int(lv["j"]), int(lv["d"]), int(lv["l"]), _change_from_json(lv["change"]),
                           elem(lv["e"]), poly(lv["f"])) for lv in doc["levels"]]
    cert = CascadeCertificate(n, int(doc["s"]), _change_from_json(doc["input_change"]),
                              [elem(c) for c in doc["constants"]], [poly(f) for f in doc["factors"]],
                              levels, int(doc["k0"]), elem(doc["final_unit"]),
                              bool(doc.get("homogeneous", False)),
                              [(int(i), why) for i, why in doc.get("stripped", [])])
    if "shape" in doc and [list(x) for x in cert.shape()] != [list(x) for x in doc["shape"]]:
        raise ValidationError("certificate shape does not match its levels", location="certificate.shape")
    return cert


# -- outputs ---------------------------------------------------------------------------------

def _tails_to_json(tb: TailBounds):
    if tb is None:
        return None
    return {"eps": fmt_rat(tb.eps), "M": fmt_rat(tb.M), "C_upper": fmt_rat(tb.C_upper),
            "K_tail": tb.K_tail, "eta": plain(tb.eta), "delta": plain(tb.delta)}


def _tails_from_json(v):
    if v is None:
        return None
    opt = lambda x: None if x is None else parse_rat(x)  # noqa: E731
    return TailBounds(parse_rat(v["eps"]), parse_rat(v["M"]), parse_rat(v["C_upper"]), int(v["K_tail"]),
                      opt(v.get("eta")), opt(v.get("delta")))


def output_to_json(out: DescentOutput, problem: DescentProblem) -> dict:
    A = out.algebra
    names = problem.names
    return {
        "format": "equidescent-output",
        "version": FORMAT_VERSION,
        "q": [_num(x) for x in out.q],
        "algebra": {"degree": A.d, "modulus": A.modulus_str(), "embedding": A.selected,
                    "box": [fmt_rat(x) for x in A.box(A.selected)]},
        "outputs": [h.to_str(names) for h in out.outputs],
        "achieved_eps": fmt_rat(out.achieved_eps),
        "eps_used": fmt_rat(out.eps_used),
        "grid_level": out.grid_level,
        "eta": plain(out.eta),
        "delta": plain(out.delta),
        "tails": _tails_to_json(out.tails),
        "certificate": certificate_to_json(out.certificate, names),
        "conditions": plain(out.conditions),
    }


def output_from_json(doc: dict, problem: DescentProblem) -> DescentOutput:
    if not isinstance(doc, dict) or doc.get("format") != "equidescent-output":
        raise ValidationError("not an equidescent output document", location="format")
    F = problem.presentation
    try:
        q = tuple(_parse_num(x, "q") for x in doc["q"])
        alg = doc["algebra"]
        A = EtaleAlgebra(parse_upoly(alg["modulus"]), q=q)
        box = [parse_rat(x) for x in alg["box"]]
        A.selected = _box_index(A, box)
        if int(alg["embedding"]) != A.selected:
            raise ValidationError("embedding index does not match its box", location="algebra.embedding")
        dom = A.domain()
        n = problem.n
        table = {name: MPoly.gen(n, i, dom) for i, name in enumerate(problem.names)}
        table["z"] = A.z()
        table["I"] = GaussRat(0, 1)
        outputs = []
        for k, text in enumerate(doc["outputs"]):
            v = parse_expr(text, table)
            if not isinstance(v, MPoly):
                v = MPoly.constant(n, dom.convert(v), dom)
            outputs.append(v)
        cert = certificate_from_json(doc["certificate"], F, problem.names)
        eta = doc.get("eta")
        return DescentOutput(q, A, outputs, cert, parse_rat(doc["achieved_eps"]), parse_rat(doc["eps_used"]),
                             doc.get("conditions", {}), _tails_from_json(doc.get("tails")),
                             None if eta is None else parse_rat(eta), int(doc.get("grid_level", 0)))
    except KeyError as exc:
        raise ValidationError("missing field", location=exc.args[0]) from None
    except (ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ValidationError(f"output: {exc}") from None


def parse_output(text: str, problem: DescentProblem) -> DescentOutput:
    return output_from_json(load_json(text), problem)


def dump_output(out: DescentOutput, problem: DescentProblem) -> str:
    return dumps(output_to_json(out, problem))


# -- reports -----------------------------------------------------------------------------------

def report_to_json(report: VerificationReport) -> dict:
    return {
        "format": "equidescent-report",
        "version": FORMAT_VERSION,
        "status": report.status,
        "checks": [{"name": e.name, "status": e.status, "detail": e.detail, "witness": plain(e.witness)}
                   for e in report.entries],
    }


def report_from_json(doc: dict) -> VerificationReport:
    if not isinstance(doc, dict) or doc.get("format") != "equidescent-report":
        raise ValidationError("not an equidescent report document", location="format")
    rep = VerificationReport()
    for e in doc["checks"]:
        rep.add(CheckResult(e["name"], e["status"], e.get("witness", {}), e.get("detail", "")))
    return rep
