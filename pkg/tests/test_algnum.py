from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from conftest import field
from equidescent.algnum import (EtaleAlgebra, alg_is_zero_embedded, eval_tower_at_point, parse_algnum,
                                specialize_modulus)
from equidescent.errors import DiscriminantVanishes, ParseError, PoleAtPoint, ZeroDivisor
from equidescent.exactcore.numbers import GaussRat

F = field("z^2 - t", selector=("177/100", "1/10"))
A = specialize_modulus(F, [Fraction(157, 50)])


def test_specialize_modulus_examples():
    assert A.modulus_str() == "z^2 - 157/50"
    assert A.d == 2 and A.real and all(A.isolation.real)
    with pytest.raises(DiscriminantVanishes):
        specialize_modulus(F, [Fraction(0)])
    B = specialize_modulus(field("z - t"), [Fraction(3)])
    assert B.d == 1 and B.z().as_rational() == 3


def test_evaluation_examples():
    a = eval_tower_at_point(F.z, A)
    assert a.rep == (0, 1) and a.embedding == A.selected
    b = eval_tower_at_point(F.z * F.z, A)
    assert b.as_rational() == Fraction(157, 50)
    with pytest.raises(PoleAtPoint):
        eval_tower_at_point(F.parse("1/(t - 2)"), A, [Fraction(2)])


def test_zero_test_examples():
    assert alg_is_zero_embedded(A.element([0]))
    assert not alg_is_zero_embedded(A.z())
    assert alg_is_zero_embedded(A.z() * A.z() - Fraction(157, 50))


def test_zero_test_is_per_embedding():
    C = EtaleAlgebra([Fraction(-1), 0, 1])  # z^2 - 1 = (z - 1)(z + 1)
    idx_minus = min(range(2), key=lambda i: C.balls[i].center.re)
    u = C.element([1, 1], idx_minus)
    v = C.element([1, 1], 1 - idx_minus)
    assert alg_is_zero_embedded(u) and not alg_is_zero_embedded(v)
    assert not u.is_structural_zero()
    with pytest.raises(ZeroDivisor):
        u.inverse()
    # division is local to the embedding's factor
    w = v.local_inverse() * v - 1
    assert alg_is_zero_embedded(w)
    assert (C.element([3], v.embedding) / v).ball(60).contains(Fraction(3, 2))


def test_inverse_in_a_field():
    x = A.z() + 1
    y = x.inverse()
    assert alg_is_zero_embedded(x * y - 1)
    assert (x * y - 1).is_structural_zero()


def test_algnum_text_round_trip():
    for emb in range(2):
        x = A.element([Fraction(1, 3), Fraction(-2, 7)], emb)
        y = parse_algnum(x.to_text())
        assert y == x and y.embedding == emb
        assert y.to_text() == x.to_text()
    with pytest.raises(ParseError):
        parse_algnum("ALGNUM deg=3 modulus=z^2 - 2 rep=z box=<1 2 0 0>")
    with pytest.raises(ParseError):
        parse_algnum("ALGNUM deg=2 modulus=z^2 - 2 rep=z box=<-10 10 -1 1>")


def test_complex_modulus():
    C = EtaleAlgebra([GaussRat(1), 0, 1])  # z^2 + 1
    i_up = max(range(2), key=lambda k: C.balls[k].center.im)
    z = C.z(i_up)
    assert z.ball(64).contains(GaussRat(0, 1))
    assert alg_is_zero_embedded(z * z + 1)


def test_numeric_value_of_embedding():
    pos = max(range(2), key=lambda i: A.balls[i].center.re)
    b = A.element([0, 1], pos).ball(200)
    assert b.radius <= Fraction(1, 2 ** 200)
    with mpmath.workdps(120):
        c = mpmath.mpf(b.center.re.numerator) / b.center.re.denominator
        err = abs(c - mpmath.sqrt(mpmath.mpf(157) / 50))
        assert err <= mpmath.mpf(b.radius.numerator) / b.radius.denominator + mpmath.mpf(2) ** -390


coef = st.integers(-4, 4)


@st.composite
def tower_elems(draw):
    parts = [f"({draw(coef)})*t^{draw(st.integers(0, 2))}*z^{k}" for k in range(2)]
    if draw(st.booleans()):
        parts.append(f"({draw(coef)})/(t + {draw(st.integers(1, 3))})")
    return F.parse(" + ".join(parts))


@settings(max_examples=80, deadline=None)
@given(tower_elems(), tower_elems())
def test_specialization_is_a_ring_homomorphism(a, b):
    phi = lambda x: eval_tower_at_point(x, A)  # noqa: E731
    assert phi(a + b) == phi(a) + phi(b)
    assert phi(a * b) == phi(a) * phi(b)
    assert phi(a - b) == phi(a) - phi(b)
