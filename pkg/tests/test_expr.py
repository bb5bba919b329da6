from fractions import Fraction

import pytest

from curvesing.expr import ParseError, parse_form, parse_polynomial, parse_univariate


def test_form_coefficients_indexed_by_power_of_first_variable():
    d, c = parse_form("s^2*v + 3 v^3")
    assert d == 3
    assert c == [3, 0, 1, 0]


def test_implicit_multiplication_and_power_operators():
    assert parse_form("2s(s+v)**2") == parse_form("2*s*(s^2 + 2*s*v + v^2)")


def test_rational_literals():
    d, c = parse_form("s/2 - 3v/4")
    assert c == [Fraction(-3, 4), Fraction(1, 2)]


def test_univariate():
    assert parse_univariate("(t+1)^2") == [1, 2, 1]
    assert parse_univariate("0") == []


def test_expansion_cancels():
    assert parse_polynomial("(s+v)(s-v) - s^2 + v^2", ("s", "v")) == {}


@pytest.mark.parametrize("text, pos", [("(s+v", 4), ("s + * v", 4), ("s $ v", 2), ("x + s", 0)])
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_form(text)
    assert exc.value.pos == pos
    assert f"position {pos}" in str(exc.value)


def test_semantic_errors():
    with pytest.raises(ValueError, match="not homogeneous"):
        parse_form("s^2 + v")
    with pytest.raises(ValueError, match="zero"):
        parse_form("s - s")
    with pytest.raises(ParseError, match="negative exponent"):
        parse_form("s^-1")
    with pytest.raises(ParseError, match="constant"):
        parse_form("s/v")
