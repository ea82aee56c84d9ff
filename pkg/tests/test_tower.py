from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import field
from equidescent.errors import DivisionByZero, NotMonic, NotSquarefree, ValidationError
from equidescent.tower import FieldPresentation, tw_inv, tw_is_zero, tw_mul

F = field("z^2 - t", selector=("177/100", "1/10"))
G = field("z^3 - t1*z - t2", r=2, bindings=("pi", "e"), selector=("2", "1/2"))

coef = st.integers(-3, 3)


@st.composite
def elems(draw, K=F):
    names = K.t_names()
    d = K.d
    parts = []
    for k in range(d):
        c = draw(coef)
        tpow = [draw(st.integers(0, 2)) for _ in names]
        mono = "*".join(f"{n}^{p}" for n, p in zip(names, tpow))
        parts.append(f"({c})*{mono}*z^{k}")
    return K.parse(" + ".join(parts))


def test_multiplication_examples():
    z, t = F.z, F.t(0)
    assert tw_mul(z, z) == t
    assert F.one * z == z
    assert (1 + z) * (1 - z) == 1 - t


def test_inverse_examples():
    z, t = F.z, F.t(0)
    assert tw_inv(z) == z / t
    assert z * tw_inv(z) == F.one
    assert tw_inv(F.one) == F.one
    with pytest.raises(DivisionByZero):
        tw_inv(F.zero)


def test_zero_test_examples():
    assert tw_is_zero(F.zero)
    assert tw_is_zero(F.parse("z*z - t"))
    assert not tw_is_zero(F.z)


def test_presentation_validation():
    with pytest.raises(NotSquarefree):
        field("z^2 - 2*t*z + t^2")
    with pytest.raises(NotMonic):
        from conftest import parse_P
        FieldPresentation(1, [c * 2 for c in parse_P("z^2 - t", 1)])
    with pytest.raises(ValidationError):
        from conftest import parse_P
        FieldPresentation(1, parse_P("z^2 - t", 1), [])


@settings(max_examples=40, deadline=None)
@given(elems(), elems(), elems())
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    if not tw_is_zero(a):
        assert a * tw_inv(a) == F.one


@settings(max_examples=25, deadline=None)
@given(elems(G), elems(G))
def test_products_match_sympy_reduction(a, b):
    t1, t2, z = sympy.symbols("t1 t2 z")
    P = z ** 3 - t1 * z - t2

    def sym(x):
        return sympy.sympify(str(x).replace("^", "**"), locals={"t1": t1, "t2": t2, "z": z})

    ours = sym(a * b)
    ref = sympy.rem(sympy.expand(sym(a) * sym(b)), P, z)
    assert sympy.simplify(ours - ref) == 0


def test_text_round_trip():
    a = F.parse("(t + 1)/(t - 2)*z + 3/t")
    assert F.parse(str(a)) == a
    assert a.to_text().count(",") == F.d - 1
    assert sorted(str(d) for d in a.denominators()) == ["t", "t - 2"] or len(a.denominators()) == 2


def test_bad_locus_contains_the_discriminant():
    disc = F.discriminant_numerator()
    # z^2 - t has discriminant 4t: it vanishes at t = 0 only
    assert disc.evaluate([Fraction(0)]) == 0
    assert disc.evaluate([Fraction(1)]) != 0
