from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from equidescent.algnum import AlgNum
from equidescent.descent import (DescentProblem, descend, grid_candidates, shrink_epsilon)
from equidescent.errors import SearchExhausted, ValidationError
from equidescent.exactcore.numbers import GaussRat
from equidescent.io import problem_from_json
from equidescent.numeric.track import z_ball


def problem(**kw):
    doc = {"ground": "R", "r": 1, "d": 1, "P": "z - t", "bindings": ["pi"], "epsilon": "1/100"}
    doc.update(kw)
    return problem_from_json(doc)


def value(a):
    """Float value of an output coefficient at the selected embedding."""
    if isinstance(a, AlgNum):
        return float(a.ball(60).center.re)
    return float(a)


def test_cusp_descends_to_grid_point_near_pi(cusp_run):
    prob, out = cusp_run
    (q,) = out.q
    assert isinstance(q, Fraction)
    assert q == Fraction(157, 50)
    assert abs(q - Fraction(314159, 100000)) < out.eps_used / 2
    (g,) = out.outputs
    assert g.to_str(prob.names) == "-157/50*x1^3 + x2^2"
    # shape is preserved: same support as the input
    assert set(g.terms) == set(prob.inputs[0].terms)
    assert out.achieved_eps < prob.eps


def test_sqrt_pi_selects_positive_root(sqrt_pi_run):
    prob, out = sqrt_pi_run
    (q,) = out.q
    A = out.algebra
    assert A.modulus == (-q, Fraction(0), Fraction(1))
    z = A.z()
    assert z * z == q  # structural: z^2 reduces to q modulo z^2 - q
    zb = z.ball(80)
    assert zb.center.re > 0
    with mpmath.workdps(40):
        assert abs(value(z) - float(mpmath.sqrt(mpmath.pi))) < 2 * float(out.eps_used)
    (g,) = out.outputs
    assert str(g) == f"x1^2 + z*x1 + {q.numerator}/{q.denominator}"


def test_conditions_are_recorded(cusp_run):
    _, out = cusp_run
    c = out.conditions
    for key in ("exact", "units", "closeness", "distance", "grid", "shrink"):
        assert key in c
    assert c["distance"]["bound"] <= c["distance"]["limit"]
    assert c["shrink"]["eps_used"] == out.eps_used
    assert out.grid_level == c["grid"]["level"]


def test_identity_descent_without_parameters():
    prob = problem(r=0, d=2, P="z^2 - 2", bindings=[], z_selector={"center": "1", "radius": "1"},
                   variables=["x1"], polynomials=["x1^2 - z"])
    out = descend(prob)
    assert out.q == ()
    assert out.achieved_eps == 0
    (g,) = out.outputs
    z = out.algebra.z()
    assert z * z == 2 and z.ball(60).center.re > 0
    assert g.terms[(2,)] == 1 and g.terms[(0,)] == -z


def test_rational_inputs_pass_through():
    prob = problem(variables=["x1", "x2"], polynomials=["x1^2 - 1/3*x2", "x1*x2 + 7"])
    out = descend(prob)
    for a, b in zip(prob.inputs, out.outputs):
        assert set(a.terms) == set(b.terms)
        for e, c in a.terms.items():
            assert b.terms[e] == c.as_rational()
    # only the enclosure radius of the bindings remains
    assert out.achieved_eps < Fraction(1, 2 ** 90)


def test_descent_is_idempotent(cusp_run):
    prob, out = cusp_run
    again = descend(prob)
    assert again.q == out.q
    assert [str(g) for g in again.outputs] == [str(g) for g in out.outputs]


def test_homogeneous_input():
    prob = problem(variables=["x1", "x2"], polynomials=["x1^2 - t*x2^2"], homogeneous=True)
    out = descend(prob)
    assert out.outputs[0].is_homogeneous()
    assert out.certificate.homogeneous
    with pytest.raises(ValidationError):
        problem(variables=["x1", "x2"], polynomials=["x1^2 - t*x2"], homogeneous=True)


def test_epsilon_shrinks_away_from_a_pole():
    # 1/(t - 3) has a pole at distance pi - 3 < 1/2 of the binding
    prob = problem(variables=["x1"], polynomials=["x1 - 1/(t - 3)"], epsilon="1/2")
    base = z_ball(prob.presentation)
    eps, info = shrink_epsilon(prob, base)
    assert eps < Fraction(1, 2)
    assert 2 * info["eps_certified"] < Fraction(14159, 100000)
    out = descend(prob)
    (q,) = out.q
    assert abs(q - 3) > Fraction(1, 10)


def test_small_coefficients_cap_epsilon():
    prob = problem(variables=["x1"], polynomials=["x1 + (t - 3)"], epsilon="1")
    eps, info = shrink_epsilon(prob, z_ball(prob.presentation))
    assert info["coefficient_lower_bound"] <= Fraction(15, 100)
    assert eps <= info["coefficient_lower_bound"] / 2


def test_search_exhausted_when_grid_too_coarse():
    prob = problem(variables=["x1"], polynomials=["x1 - t"], epsilon="1/100000", grid_cap=2)
    with pytest.raises(SearchExhausted):
        descend(prob)


def test_invalid_problem():
    with pytest.raises(ValidationError):
        DescentProblem(problem().presentation, [], Fraction(1, 10))
    with pytest.raises(ValidationError):
        problem(epsilon="0", polynomials=["x1"])


@settings(max_examples=40, deadline=None)
@given(st.fractions(min_value=-10, max_value=10, max_denominator=1000),
       st.fractions(min_value=Fraction(1, 1000), max_value=1, max_denominator=1000),
       st.integers(1, 4))
def test_grid_candidates_lie_in_disk_on_the_grid(c, r, m):
    pts = grid_candidates([GaussRat(c)], [r], m, real=True)
    den = 10 ** m
    for (w,) in pts:
        assert abs(w.re - c) <= r
        assert (w.re * den).denominator == 1
    dists = [abs(w.re - c) for (w,) in pts]
    assert dists == sorted(dists)
    # nothing nearer is skipped
    if pts:
        best = round(c * den) / Fraction(den)
        if abs(best - c) <= r:
            assert dists[0] == abs(best - c)


def test_complex_grid_candidates():
    pts = grid_candidates([GaussRat(Fraction(1, 3), Fraction(1, 7))], [Fraction(1, 20)], 2, real=False)
    assert pts
    for (w,) in pts:
        assert (w - GaussRat(Fraction(1, 3), Fraction(1, 7))).abs_upper() <= Fraction(1, 20)
        assert (w.re * 100).denominator == 1 and (w.im * 100).denominator == 1
