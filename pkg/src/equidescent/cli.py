"""Command-line entry point: ``equidescent {descend,verify,cascade,gendisc,track}``.

Exit codes: 0 success (verification passed), 1 usage or input error,
2 computation failure, 3 verification failed, 4 verification inconclusive.
"""

from __future__ import annotations

import argparse
import re
import sys

from . import __version__
from .cascade import build_cascade
from .descent import descend
from .errors import EquidescentError, ParseError
from .exactcore.mpoly import MPoly
from .exactcore.numbers import fmt_rat, parse_rat
from .exactcore.text import parse_expr
from .gendisc import generalized_discriminants
from .io import (certificate_to_json, dump_output, dumps, parse_output, parse_problem, plain,
                 report_to_json)
from .numeric.track import track_root
from .verify.checks import FAIL, INCONCLUSIVE, PASS, verify_output

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_FAIL, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, path: str = None):
    if path and path != "-":
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_problem(args):
    problem = parse_problem(_read(args.problem))
    if getattr(args, "epsilon", None) is not None:
        eps = parse_rat(args.epsilon)
        if eps <= 0:
            raise UsageError("--epsilon must be positive")
        problem.eps = eps
    if getattr(args, "precision_cap", None) is not None:
        problem.precision_cap = args.precision_cap
    if getattr(args, "grid_cap", None) is not None:
        problem.grid_cap = args.grid_cap
    if getattr(args, "order", None) is not None:
        problem.order = args.order
    if getattr(args, "homogeneous", False):
        for g in problem.inputs:
            if not g.is_homogeneous():
                raise UsageError("--homogeneous given but an input is not homogeneous")
        problem.homogeneous = True
    return problem


# -- commands ------------------------------------------------------------------------------

def cmd_descend(args) -> int:
    problem = _load_problem(args)
    out = descend(problem)
    _emit(dump_output(out, problem), args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    problem = _load_problem(args)
    out = parse_output(_read(args.result), problem)
    report = verify_output(problem, out, order=args.order)
    _emit(dumps(report_to_json(report)), args.output)
    for e in report.entries:
        line = f"{e.name}: {e.status}" + (f" ({e.detail})" if e.detail else "")
        print(line, file=sys.stderr)
    return {PASS: EXIT_OK, FAIL: EXIT_FAIL, INCONCLUSIVE: EXIT_INCONCLUSIVE}[report.status]


def cmd_cascade(args) -> int:
    problem = _load_problem(args)
    cert = build_cascade(problem.inputs, problem.presentation, problem.homogeneous)
    _emit(dumps(certificate_to_json(cert, problem.names)), args.output)
    return EXIT_OK


_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def cmd_gendisc(args) -> int:
    names = sorted(set(_NAME.findall(args.polynomial)))
    if args.var is not None:
        if args.var not in names:
            raise UsageError(f"variable {args.var!r} does not occur in the polynomial")
        names.remove(args.var)
        names.append(args.var)
    if not names:
        raise UsageError("the polynomial has no variable")
    if len(names) > 1 and args.var is None:
        raise UsageError("several names occur; choose the main variable with --var")
    n = len(names)
    table = {name: MPoly.gen(n, i) for i, name in enumerate(names)}
    f = parse_expr(args.polynomial, table)
    if not isinstance(f, MPoly):
        raise UsageError("the polynomial is constant")
    seq = generalized_discriminants(f, n - 1)
    vals = ", ".join(v.to_str(names) for v in seq.values)
    _emit(f"({vals}), l = {seq.first_nonzero}\n", args.output)
    return EXIT_OK


def cmd_track(args) -> int:
    problem = parse_problem(_read(args.problem))
    F = problem.presentation
    try:
        q = [parse_rat(x) for x in args.at.split(",")] if args.at.strip() else []
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--at: {exc}") from None
    if len(q) != F.r:
        raise UsageError(f"--at needs {F.r} comma-separated rationals")
    tr = track_root(F, q)
    box = tr.isolation.balls[tr.index].box(real=tr.isolation.real[tr.index])
    doc = {"q": [fmt_rat(x) for x in q], "index": tr.index, "box": [fmt_rat(x) for x in box],
           "steps": tr.steps, "separation": plain(tr.delta)}
    _emit(dumps(doc), args.output)
    return EXIT_OK


# -- parser -----------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="equidescent", description="Descend polynomial systems to algebraic coefficients.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def common(sp, tuning=True):
        sp.add_argument("problem", help="problem file (JSON), or - for stdin")
        sp.add_argument("-o", "--output", help="write the result here instead of stdout")
        if tuning:
            sp.add_argument("--epsilon", help="override the file's epsilon (exact rational a/b)")
            sp.add_argument("--precision-cap", type=int, help="largest working precision in bits")
            sp.add_argument("--grid-cap", type=int, help="finest grid level 10^-m tried")
            sp.add_argument("--order", choices=["grlex", "lex"], help="monomial order for the Groebner check")
            sp.add_argument("--homogeneous", action="store_true", help="treat the inputs as homogeneous")

    sp = sub.add_parser("descend", help="compute a descended system")
    common(sp)
    sp.set_defaults(func=cmd_descend)

    sp = sub.add_parser("verify", help="re-verify a descended system")
    common(sp)
    sp.add_argument("result", help="output of the descend command")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("cascade", help="print the discriminant cascade certificate")
    common(sp)
    sp.set_defaults(func=cmd_cascade)

    sp = sub.add_parser("gendisc", help="generalized discriminants of a polynomial over Q")
    sp.add_argument("polynomial", help='expression such as "x^2 - 2*x + 1"')
    sp.add_argument("--var", help="main variable when several names occur")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_gendisc)

    sp = sub.add_parser("track", help="continue the selected root of P to a rational point")
    common(sp, tuning=False)
    sp.add_argument("--at", required=True, help="comma-separated rational coordinates of the point")
    sp.set_defaults(func=cmd_track)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"equidescent: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"equidescent: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EquidescentError, ArithmeticError, ValueError) as exc:
        print(f"equidescent: computation failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
