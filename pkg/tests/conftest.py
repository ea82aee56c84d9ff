from fractions import Fraction
from pathlib import Path

import pytest
import sympy

from equidescent.exactcore.mpoly import MPoly
from equidescent.exactcore.text import parse_expr
from equidescent.io import parse_P, parse_problem
from equidescent.numeric.ball import Ball
from equidescent.numeric.scalars import ComputableScalar
from equidescent.tower import FieldPresentation

FIXTURES = Path(__file__).parent / "fixtures"


def qpoly(text, names):
    """MPoly over Q in the given variable names."""
    n = len(names)
    v = parse_expr(text, {name: MPoly.gen(n, i) for i, name in enumerate(names)})
    return v if isinstance(v, MPoly) else MPoly.constant(n, Fraction(v))


def to_sympy(p, names):
    syms = sympy.symbols(names)
    return sympy.sympify(p.to_str(names).replace("^", "**"), locals=dict(zip(names, syms)))


def field(P, r=1, bindings=("pi",), selector=None, ground="R"):
    bs = [ComputableScalar.builtin(b) if isinstance(b, str) else ComputableScalar.rational(b)
          for b in bindings]
    sel = None if selector is None else Ball(Fraction(selector[0]), Fraction(selector[1]))
    return FieldPresentation(r, parse_P(P, r), bs, sel, ground)


def tpoly(F, text, n):
    table = dict(F.symbols())
    table.update({f"x{i + 1}": MPoly.gen(n, i, F) for i in range(n)})
    v = parse_expr(text, table)
    return v if isinstance(v, MPoly) else MPoly.constant(n, F.convert(v), F)


def specialize_at(problem, out, q):
    """The descent output recomputed honestly at another rational point ``q``."""
    import dataclasses
    from equidescent.algnum import eval_tower_at_point, specialize_modulus
    from equidescent.numeric.track import track_root
    F = problem.presentation
    tr = track_root(F, q)
    A = specialize_modulus(F, q, tr.isolation, tr.index)
    dom = A.domain()
    outs = [MPoly(g.nvars, {e: eval_tower_at_point(c, A, q) for e, c in g.terms.items()}, dom)
            for g in problem.inputs]
    return dataclasses.replace(out, q=tuple(Fraction(x) for x in q), algebra=A, outputs=outs)


def load(name):
    return parse_problem((FIXTURES / name).read_text())


@pytest.fixture(scope="session")
def cusp_run():
    from equidescent.descent import descend
    problem = load("cusp.json")
    return problem, descend(problem)


@pytest.fixture(scope="session")
def sqrt_pi_run():
    from equidescent.descent import descend
    problem = load("sqrt_pi.json")
    return problem, descend(problem)


@pytest.fixture(scope="session")
def groebner_run():
    from equidescent.descent import descend
    problem = load("groebner.json")
    return problem, descend(problem)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for name in sorted(lines, key=lambda k: int(k[2:])):
            terminalreporter.write_line(lines[name])
