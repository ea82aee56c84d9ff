from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import qpoly, to_sympy
from equidescent.errors import ParseError
from equidescent.exactcore.det import cofactor_det, ff_det
from equidescent.exactcore.gcd import is_squarefree_in, mv_gcd, mv_lcm
from equidescent.exactcore.mpoly import MPoly, grlex_key
from equidescent.exactcore.numbers import GaussRat, fmt_rat, parse_rat, sqrt_lower, sqrt_upper
from equidescent.exactcore.ratfunc import RatFunc, rf_normalize
from equidescent.exactcore.resultant import resultant
from equidescent.exactcore.text import parse_expr
from equidescent.exactcore.upoly import up_divmod, up_gcd, up_mul, up_xgcd, up_add

N2 = ["t1", "t2"]

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def polys(draw, nvars=2, max_terms=4, max_deg=3):
    k = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(k):
        e = tuple(draw(st.integers(0, max_deg)) for _ in range(nvars))
        terms[e] = draw(small)
    return MPoly(nvars, terms)


# -- numbers --------------------------------------------------------------------------------

def test_parse_and_format_rationals():
    assert parse_rat("3/4") == Fraction(3, 4)
    assert parse_rat("-1.25") == Fraction(-5, 4)
    assert fmt_rat(Fraction(6, 3)) == "2"
    assert fmt_rat(Fraction(-1, 3)) == "-1/3"
    with pytest.raises(ValueError):
        parse_rat(0.5)
    with pytest.raises(ValueError):
        parse_rat("1e3")


@given(small)
def test_rational_text_round_trip(x):
    assert parse_rat(fmt_rat(x)) == x


@given(st.fractions(min_value=0, max_value=100, max_denominator=50))
def test_sqrt_bounds_bracket(x):
    lo, hi = sqrt_lower(x), sqrt_upper(x)
    assert lo * lo <= x <= hi * hi
    assert hi - lo <= Fraction(1, 2 ** 30) * (1 + hi)


def test_gaussian_arithmetic():
    a = GaussRat(1, 2)
    b = GaussRat(Fraction(1, 2), -1)
    assert a * a.inverse() == 1
    assert (a * b).re == Fraction(1, 2) + 2
    assert a.conjugate() == GaussRat(1, -2)
    assert a.abs2() == 5
    assert a.abs_lower() ** 2 <= 5 <= a.abs_upper() ** 2


# -- polynomials ----------------------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(polys(), polys())
def test_ring_operations_match_sympy(f, g):
    assert to_sympy(f + g, N2).expand() == (to_sympy(f, N2) + to_sympy(g, N2)).expand()
    assert to_sympy(f * g, N2).expand() == (to_sympy(f, N2) * to_sympy(g, N2)).expand()
    assert (f - f) == MPoly.zero(2)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_distributivity(f, g, h):
    assert f * (g + h) == f * g + f * h


def test_canonical_grlex_serialization():
    p = qpoly("t2^2 + t1^3 - 1/2*t1*t2 + 7", N2)
    assert p.to_str(N2) == "t1^3 - 1/2*t1*t2 + t2^2 + 7"
    assert [e for e, _ in p.sorted_terms()] == sorted(p.terms, key=grlex_key, reverse=True)


@settings(max_examples=40, deadline=None)
@given(polys())
def test_text_round_trip(f):
    assert qpoly(f.to_str(N2), N2) == f


def test_parser_rejects_garbage():
    with pytest.raises(ParseError):
        parse_expr("t1 +", {"t1": MPoly.gen(1, 0)})
    with pytest.raises(ParseError):
        parse_expr("w", {"t1": MPoly.gen(1, 0)})


def test_exact_division():
    f = qpoly("t1^2 - t2^2", N2)
    g = qpoly("t1 - t2", N2)
    assert f.exquo(g) == qpoly("t1 + t2", N2)
    assert g.divides(f)
    assert not qpoly("t1 + 2", N2).divides(f)


# -- gcd ----------------------------------------------------------------------------------------

def test_gcd_examples():
    f, g = qpoly("t1^2 - t2^2", N2), qpoly("t1 - t2", N2)
    h = mv_gcd(f, g)
    assert h == g
    assert h.divides(f) and h.divides(g)
    assert mv_gcd(qpoly("2*t1 + 4", N2), MPoly.zero(2)) == qpoly("t1 + 2", N2)
    assert mv_gcd(qpoly("t1 + 1", N2), qpoly("t2 + 1", N2)) == MPoly.constant(2, 1)
    # coprimality witness: the resultant in t1 is a nonzero polynomial
    assert resultant(qpoly("t1 + 1", N2), qpoly("t2 + 1", N2), 0)


@settings(max_examples=40, deadline=None)
@given(polys(max_terms=3, max_deg=2), polys(max_terms=3, max_deg=2), polys(max_terms=3, max_deg=2))
def test_gcd_matches_sympy(a, b, c):
    f, g = a * c, b * c
    ours = mv_gcd(f, g)
    ref = sympy.gcd(to_sympy(f, N2), to_sympy(g, N2))
    if not f and not g:
        assert not ours
        return
    assert sympy.simplify(to_sympy(ours, N2) / ref).is_number


def test_lcm_and_squarefree():
    a, b = qpoly("t1 - 1", N2), qpoly("t1^2 - 1", N2)
    assert mv_lcm(a, b) == b
    assert is_squarefree_in(qpoly("t2^2 - t1", N2), 1)
    assert not is_squarefree_in(qpoly("(t2 - t1)^2", N2), 1)


# -- determinants ----------------------------------------------------------------------------

def test_det_examples():
    b, c = MPoly.gen(2, 0), MPoly.gen(2, 1)
    s0, s1, s2 = MPoly.constant(2, 2), -b, b * b - c * 2
    assert ff_det([[s0, s1], [s1, s2]]) == b * b - c * 4
    eye = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
    assert ff_det(eye) == 1
    assert ff_det([[Fraction(1), Fraction(1)], [Fraction(1), Fraction(1)]]) == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n),
                                                  min_size=n, max_size=n)))
def test_bareiss_agrees_with_cofactor_and_sympy(m):
    fm = [[Fraction(x) for x in row] for row in m]
    d = ff_det(fm)
    assert d == cofactor_det(fm)
    assert d == sympy.Matrix(m).det()


def test_bareiss_polynomial_entries():
    t = MPoly.gen(1, 0)
    m = [[t, t + 1, MPoly.constant(1, 2)], [t * t, MPoly.constant(1, 1), t], [t - 1, t, t + 3]]
    assert ff_det(m) == cofactor_det(m)


# -- resultants -----------------------------------------------------------------------------

def test_resultant_examples():
    names = ["t", "z"]
    assert resultant(qpoly("z^2 - t", names), qpoly("2*z", names), 1) == qpoly("-4*t", names)
    assert resultant(qpoly("z^2 - t", names), qpoly("1", names), 1) == 1
    names = ["a", "b", "z"]
    assert resultant(qpoly("z - a", names), qpoly("z - b", names), 2) == qpoly("a - b", names)


@settings(max_examples=30, deadline=None)
@given(polys(max_terms=3, max_deg=3), polys(max_terms=3, max_deg=2))
def test_resultant_matches_sympy(f, g):
    z = MPoly.gen(2, 1)
    f = f + z ** 3
    g = g + z * z
    ours = resultant(f, g, 1)
    t1, t2 = sympy.symbols(N2)
    ref = sympy.resultant(to_sympy(f, N2), to_sympy(g, N2), t2)
    assert sympy.expand(to_sympy(ours, N2) - ref) == 0


# -- rational functions -------------------------------------------------------------------

def test_rf_normalize_examples():
    n = ["t"]
    assert rf_normalize(qpoly("2*t", n), qpoly("2", n)) == RatFunc.from_poly(qpoly("t", n))
    r = rf_normalize(qpoly("t^2 - 1", n), qpoly("t - 1", n))
    assert r.num == qpoly("t + 1", n) and r.den == MPoly.constant(1, 1)
    z = rf_normalize(qpoly("0", n), qpoly("t^3 + 5", n))
    assert not z and z.den == MPoly.constant(1, 1)


@settings(max_examples=40, deadline=None)
@given(polys(nvars=1), polys(nvars=1), polys(nvars=1))
def test_ratfunc_field_laws(a, b, c):
    if not b or not c:
        return
    x, y = RatFunc(a, b), RatFunc(b, c)
    assert (x * y) / y == x
    assert x + y - y == x
    lhs = to_sympy((x + y).num, ["t"]) / to_sympy((x + y).den, ["t"])
    rhs = to_sympy(a, ["t"]) / to_sympy(b, ["t"]) + to_sympy(b, ["t"]) / to_sympy(c, ["t"])
    assert sympy.simplify(lhs - rhs) == 0


# -- univariate helpers -------------------------------------------------------------------------

def test_upoly_xgcd():
    a = [Fraction(-1), Fraction(0), Fraction(1)]  # z^2 - 1
    b = [Fraction(1), Fraction(1)]  # z + 1
    g, s, t = up_xgcd(a, b)
    assert up_add(up_mul(s, a), up_mul(t, b)) == g
    assert up_gcd(a, b) == [Fraction(1), Fraction(1)]
    q, r = up_divmod(a, b)
    assert q == [Fraction(-1), Fraction(1)] and not r
