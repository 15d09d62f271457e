from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lcaheart.errors import LcaHeartError, MissingShadowError, MixedSymbolTableError
from lcaheart.scalars import (
    CircleScalar,
    Scalar,
    SymbolTable,
    circle_reduce,
    linear_combine,
    shadow_eval,
)

TABLE = SymbolTable([("a", 1.41421356), ("b", 2.71828182)])
A = TABLE.symbol("a")
B = TABLE.symbol("b")


def q(x):
    return TABLE.rational(x)


def test_linear_combine_additivity():
    assert linear_combine([(1, A), (1, A)]) == 2 * A


def test_linear_combine_cancellation():
    assert linear_combine([(2, q(Fraction(1, 3))), (-1, q(Fraction(2, 3)))]).is_zero()


def test_linear_combine_coefficientwise():
    # (3, a + 1/2) + (-3, a) -> 3/2, checked against the shadow oracle
    s = linear_combine([(3, A + Fraction(1, 2)), (-3, A)])
    assert s == q(Fraction(3, 2))
    assert abs(shadow_eval(s) - 1.5) < 1e-12


def test_no_symbol_products():
    with pytest.raises(LcaHeartError):
        A * B  # noqa: B018


def test_mixed_tables_rejected():
    other = SymbolTable([("a", 3.0)])
    with pytest.raises(MixedSymbolTableError):
        linear_combine([(1, A), (1, other.symbol("a"))])


def test_rational_table_is_compatible():
    plain = SymbolTable().rational(Fraction(1, 2))
    assert (A + plain).component(0) == Fraction(1, 2)


def test_circle_reduce_examples():
    assert circle_reduce(q(Fraction(7, 3))).value == q(Fraction(1, 3))
    s = circle_reduce(A + Fraction(5, 2))
    assert s.value == A + Fraction(1, 2)
    assert circle_reduce(q(Fraction(-1, 4))).value == q(Fraction(3, 4))


def test_circle_zero_iff_integer_rational():
    assert circle_reduce(q(3)).is_zero()
    assert not circle_reduce(A).is_zero()


def test_shadow_eval_examples():
    assert shadow_eval(q(Fraction(1, 2))) == 0.5
    assert shadow_eval(A) == pytest.approx(1.41421356)
    assert shadow_eval(2 * A + Fraction(1, 2)) == pytest.approx(3.32842712)


def test_shadow_eval_missing():
    t = SymbolTable([("g", None)])
    with pytest.raises(MissingShadowError):
        shadow_eval(t.symbol("g"))


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)


@st.composite
def scalars(draw):
    c0 = draw(rationals)
    c1 = draw(rationals)
    c2 = draw(rationals)
    return Scalar.make(TABLE, {0: c0, 1: c1, 2: c2})


@given(scalars(), scalars(), scalars())
def test_combine_associative(x, y, z):
    lhs = linear_combine([(1, linear_combine([(1, x), (1, y)])), (1, z)])
    rhs = linear_combine([(1, x), (1, linear_combine([(1, y), (1, z)]))])
    assert lhs == rhs


@given(scalars())
def test_no_zero_coefficients_stored(x):
    assert all(c != 0 for _, c in x.coeffs)


@given(scalars(), scalars(), rationals, rationals)
def test_shadow_eval_is_q_linear(x, y, p, r):
    lhs = shadow_eval(linear_combine([(p, x), (r, y)]))
    rhs = float(p) * shadow_eval(x) + float(r) * shadow_eval(y)
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(lhs), abs(rhs))


@given(scalars())
def test_circle_reduce_idempotent_and_in_range(x):
    c = circle_reduce(x)
    assert 0 <= c.value.rational_part < 1
    assert circle_reduce(c.value) == c
    assert (x - c.value).is_rational()


@given(scalars())
def test_json_round_trip(x):
    assert Scalar.from_json(x.to_json(), TABLE) == x


def test_is_rational_decidable():
    assert q(Fraction(5, 7)).is_rational()
    assert not (A + 1).is_rational()
    assert circle_reduce(q(Fraction(9, 4))).value.is_rational()
