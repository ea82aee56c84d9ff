import sys
from fractions import Fraction
from pathlib import Path

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from conftest import field, qpoly
from equidescent.errors import NotSquarefree, OracleFailure, PathUncertifiable
from equidescent.exactcore.numbers import GaussRat
from equidescent.numeric.ball import Ball, BallDivisionError
from equidescent.numeric.certify import (c_upper, certify_ball_nonvanishing, k_tail, sup_abs,
                                         tail_constants)
from equidescent.numeric.evaluate import eval_mpoly, eval_tower
from equidescent.numeric.roots import isolate_roots, krawczyk, refine_root
from equidescent.numeric.scalars import ComputableScalar, exp_ball, log_ball, pi_ball
from equidescent.numeric.track import track_root, z_ball

HERE = Path(__file__).parent
mpmath.mp.dps = 200


def mpq(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def contains_mp(b: Ball, value) -> bool:
    """Containment checked with an independent high-precision value."""
    c = mpmath.mpc(mpmath.mpf(b.center.re.numerator) / b.center.re.denominator,
                   mpmath.mpf(b.center.im.numerator) / b.center.im.denominator)
    r = mpmath.mpf(b.radius.numerator) / b.radius.denominator
    return abs(c - value) <= r


rats = st.fractions(min_value=-10, max_value=10, max_denominator=20)
radii = st.fractions(min_value=0, max_value=1, max_denominator=20)
unit = st.fractions(min_value=-1, max_value=1, max_denominator=16)


# -- balls ------------------------------------------------------------------------------------

@settings(max_examples=100, deadline=None)
@given(rats, radii, rats, radii, unit, unit)
def test_ball_arithmetic_encloses(ca, ra, cb, rb, sa, sb):
    a, b = Ball(ca, ra), Ball(cb, rb)
    x, y = ca + sa * ra, cb + sb * rb  # points inside the balls
    assert (a + b).contains(x + y)
    assert (a - b).contains(x - y)
    assert (a * b).contains(x * y)
    if not b.contains_zero():
        assert (a / b).contains(x / y)


def test_division_by_ball_containing_zero():
    with pytest.raises(BallDivisionError):
        Ball(Fraction(1), Fraction(1, 2)) / Ball(Fraction(0), Fraction(1))


def test_rounded_balls_still_enclose():
    a = Ball(Fraction(1, 3), 0, prec=20)
    b = a * a
    assert b.contains(Fraction(1, 9))


# -- scalars ----------------------------------------------------------------------------------

def test_pi_refinement():
    b = ComputableScalar.builtin("pi").refine(7)
    assert b.radius <= Fraction(1, 128)
    assert contains_mp(b, mpmath.pi)


def test_rational_scalar_is_exact():
    b = ComputableScalar.rational(Fraction(3, 2)).refine(40)
    assert b.radius == 0 and b.center == Fraction(3, 2)


def test_e_refinements_are_consistent():
    e = ComputableScalar.builtin("e")
    b10, b5 = e.refine(10), e.refine(5)
    assert b10.radius <= Fraction(1, 1024)
    assert b10.overlaps(b5)
    assert contains_mp(b10, mpmath.e)


@pytest.mark.parametrize("spec,ref", [
    ("log 2", mpmath.log(2)),
    ("log 1/3", mpmath.log(mpmath.mpf(1) / 3)),
    ("exp -5/2", mpmath.exp(mpmath.mpf(-5) / 2)),
    ("exp 3", mpmath.exp(3)),
])
def test_builtin_functions(spec, ref):
    for p in (8, 40, 200):
        b = ComputableScalar.builtin(spec).refine(p)
        assert b.radius <= Fraction(1, 2 ** p)
        assert contains_mp(b, ref)


def test_unknown_builtin():
    with pytest.raises(ValueError):
        ComputableScalar.builtin("gamma")
    with pytest.raises(ValueError):
        ComputableScalar.builtin("log -1")


def test_pi_and_exp_at_high_precision():
    assert contains_mp(pi_ball(250), mpmath.pi)
    assert contains_mp(exp_ball(Fraction(7, 3), 250), mpmath.exp(mpmath.mpf(7) / 3))
    assert contains_mp(log_ball(Fraction(10), 250), mpmath.log(10))


def test_external_oracle_protocol():
    cmd = [sys.executable, str(HERE / "oracle_sqrt2.py")]
    s2 = ComputableScalar.from_oracle(cmd, 0)
    c3 = ComputableScalar.from_oracle(s2.oracle, 1)
    for p in (4, 30, 100):
        assert contains_mp(s2.refine(p), mpmath.sqrt(2))
        assert contains_mp(c3.refine(p), mpmath.cbrt(3))
        assert s2.refine(p).radius <= Fraction(1, 2 ** p)
    s2.oracle.close()


def test_malformed_oracle_reply():
    bad = ComputableScalar.from_oracle([sys.executable, str(HERE / "bad_oracle.py")], 0)
    with pytest.raises(OracleFailure):
        bad.refine(10)
    bad.oracle.close()


def test_refinement_is_cached_and_deterministic():
    pi = ComputableScalar.builtin("pi")
    assert pi.refine(64) is pi.refine(64)
    assert ComputableScalar.builtin("pi").refine(64) == pi.refine(64)


# -- root isolation -----------------------------------------------------------------------------

def test_isolate_sqrt_four_and_a_half():
    iso = isolate_roots([Fraction(-9, 2), 0, 1])
    assert len(iso.balls) == 2 and all(iso.real)
    assert 4 <= iso.separation and mpq(iso.separation) <= 2 * mpmath.sqrt(4.5)
    roots = sorted(iso.balls, key=lambda b: b.center.re)
    assert contains_mp(roots[0], -mpmath.sqrt(4.5)) and contains_mp(roots[1], mpmath.sqrt(4.5))


def test_isolate_degree_one_and_repeated_root():
    iso = isolate_roots([Fraction(-1), Fraction(1)])
    assert len(iso.balls) == 1 and iso.separation is None and iso.balls[0].contains(Fraction(1))
    with pytest.raises(NotSquarefree):
        isolate_roots([Fraction(1), Fraction(-2), Fraction(1)])


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(-6, 6), st.integers(-6, 6)), min_size=1, max_size=5, unique=True))
def test_isolation_against_mpmath(roots):
    z = GaussRat
    coeffs = [GaussRat(1)]
    for re, im in roots:
        r = GaussRat(Fraction(re, 2), Fraction(im, 3))
        coeffs = [GaussRat(0)] + coeffs  # multiply by z
        for k in range(len(coeffs) - 1):
            coeffs[k] = coeffs[k] - r * coeffs[k + 1]
    iso = isolate_roots(coeffs)
    assert len(iso.balls) == len(roots)
    for re, im in roots:
        value = mpmath.mpc(mpmath.mpf(re) / 2, mpmath.mpf(im) / 3)
        hits = [b for b in iso.balls if contains_mp(b, value)]
        assert len(hits) == 1
    for i, a in enumerate(iso.balls):
        for b in iso.balls[i + 1:]:
            assert not a.overlaps(b)


def test_krawczyk_and_refinement():
    coeffs = [Fraction(-2), Fraction(0), Fraction(1)]
    fb = [Ball(c, 0) for c in coeffs]
    dfb = [Ball(Fraction(0), 0), Ball(Fraction(2), 0)]
    assert krawczyk(fb, dfb, GaussRat(Fraction(7, 5)), Fraction(1, 10), 64)
    assert not krawczyk(fb, dfb, GaussRat(Fraction(0)), Fraction(1, 10), 64)
    tight = refine_root(coeffs, Ball(Fraction(7, 5), Fraction(1, 10)), Fraction(1, 2 ** 100), real=True)
    assert tight.radius <= Fraction(1, 2 ** 100) and contains_mp(tight, mpmath.sqrt(2))


# -- nonvanishing certificates and tail constants --------------------------------------------

def test_certify_nonvanishing_examples():
    pi = [ComputableScalar.builtin("pi")]
    R = qpoly("4*t", ["t"])
    assert certify_ball_nonvanishing([R], pi, Fraction(1))
    assert not certify_ball_nonvanishing([R], pi, Fraction(4))
    assert certify_ball_nonvanishing([qpoly("1", ["t"])], pi, Fraction(100))


def test_certificate_lower_bound_is_sound():
    pi = [ComputableScalar.builtin("pi")]
    R = qpoly("t^2 - 9", ["t"])
    cert = certify_ball_nonvanishing([R], pi, Fraction(1, 100))
    # the true minimum of |t^2 - 9| on the disk is below its value at the centre
    assert cert.ok and 0 < cert.min_abs_lower and mpq(cert.min_abs_lower) <= abs(mpmath.pi ** 2 - 9)
    # a subdivided certificate near a zero at distance ~0.14
    # pi - 3 = 0.1416: a radius of 0.14 needs subdivision close to the zero
    cert = certify_ball_nonvanishing([R], pi, Fraction(14, 100))
    assert cert.ok and cert.cells > 1


def test_tail_constants_for_sqrt():
    F = field("z^2 - t", bindings=(4,), selector=("2", "1/2"))
    tb = tail_constants(F, Fraction(1, 4))
    assert tb.M == Fraction(11, 2) and tb.K_tail == 4
    assert tb.C_upper == c_upper(Fraction(11, 2), 1)


def test_k_tail_definition():
    for r in range(1, 5):
        K = k_tail(r)
        assert all(k ** (2 * r) <= 2 ** k for k in range(K, 400))
        assert K == r or (K - 1) ** (2 * r) > 2 ** (K - 1)
    assert k_tail(1) == 4


def test_sup_abs_bounds_polynomial():
    cell = (Ball(Fraction(0), Fraction(1)),)
    u = sup_abs([qpoly("t^2 + 1", ["t"])], cell)
    assert 2 <= u <= 3


def test_eval_tower_encloses():
    F = field("z^2 - t", selector=("177/100", "1/10"))
    a = F.parse("(t + 1)*z + 1/t")
    tb = [ComputableScalar.builtin("pi").refine(100)]
    zb = Ball(Fraction(1772453850905516, 10 ** 15), Fraction(1, 10 ** 14))
    v = eval_tower(a, tb, zb, 120)
    assert contains_mp(v, (mpmath.pi + 1) * mpmath.sqrt(mpmath.pi) + 1 / mpmath.pi)
    assert eval_mpoly(qpoly("t^3", ["t"]), tb, 120).contains_zero() is False


# -- tracking --------------------------------------------------------------------------------

def test_track_sqrt_to_nine_halves():
    F = field("z^2 - t", bindings=(4,), selector=("2", "1/2"))
    tr = track_root(F, [Fraction(9, 2)])
    assert contains_mp(tr.ball, mpmath.sqrt(4.5))
    assert not contains_mp(tr.ball, -mpmath.sqrt(4.5))


def test_track_degenerate_path():
    F = field("z^2 - t", bindings=(4,), selector=("2", "1/2"))
    tr = track_root(F, [Fraction(4)])
    assert tr.ball.contains(Fraction(2))


def test_track_through_the_discriminant_fails():
    F = field("z^2 - t", bindings=(4,), selector=("2", "1/2"))
    with pytest.raises(PathUncertifiable):
        track_root(F, [Fraction(-1)])


def test_track_complex_root_of_cube():
    F = field("z^3 - t", bindings=("pi",), selector=(("-3/4", "127/100")), ground="C")
    F.z_selector = Ball(GaussRat(Fraction(-3, 4), Fraction(127, 100)), Fraction(1, 5))
    tr = track_root(F, [Fraction(3)])
    w = mpmath.cbrt(3) * mpmath.exp(2j * mpmath.pi / 3)
    assert contains_mp(tr.ball, w)


def test_z_ball_picks_selected_root():
    F = field("z^2 - t", selector=("-177/100", "1/10"))
    base = z_ball(F)
    assert contains_mp(base.ball, -mpmath.sqrt(mpmath.pi))
    assert base.eta > 3
