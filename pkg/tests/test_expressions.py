import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st
from sympy import Rational as Q

from specpot.algebra import E, a, b, c, d, nu, z
from specpot.errors import ExprSyntaxError
from specpot.expressions import parse_expr, print_expr

t = sp.Symbol("t")


def test_parse_polynomial():
    got = parse_expr("z^4+a*z^3+b*z^2+c*z+d")
    assert sp.expand(got - (z ** 4 + a * z ** 3 + b * z ** 2 + c * z + d)) == 0


def test_parse_carrier_input():
    got = parse_expr("sqrt(z)*(a+z^2+b*ln(z))")
    want = sp.sqrt(z) * (a + z ** 2 + b * sp.log(z))
    assert sp.expand(got - want) == 0


def test_parse_precedence():
    assert parse_expr("-z^2") == -z ** 2
    assert parse_expr("2*z/4") == z / 2
    assert parse_expr("1+2*3") == 7
    assert parse_expr("(1+2)*3") == 9
    assert parse_expr("2^3") == 8


def test_parse_exponent_forms():
    assert parse_expr("z^-2") == z ** -2
    assert parse_expr("z^(-2)") == z ** -2
    assert parse_expr("z^(1/2)") == sp.sqrt(z)
    assert parse_expr("z^(-3/2)") == z ** Q(-3, 2)


def test_parse_t_symbol():
    assert parse_expr("a+t") == a + t


def test_syntax_error_offset():
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr("z^^2")
    assert info.value.offset == 2


def test_syntax_error_unclosed():
    with pytest.raises(ExprSyntaxError):
        parse_expr("(z")
    with pytest.raises(ExprSyntaxError):
        parse_expr("z+")
    with pytest.raises(ExprSyntaxError):
        parse_expr("q")
    with pytest.raises(ExprSyntaxError):
        parse_expr("z $ 2")


def test_print_uses_dialect():
    assert print_expr(sp.log(z)) == "ln(z)"
    assert print_expr(sp.sqrt(z)) == "sqrt(z)"
    assert "^" in print_expr(z ** 3)
    assert "**" not in print_expr(z ** 3)


@pytest.mark.parametrize("text", [
    "z^4 + a*z^3 + b*z^2 + c*z + d",
    "(2*E*z^2 + E*b - 2)/(4*z)",
    "-z^2 - 2 - 8/(2*z^2 + 1) + 16/(2*z^2 + 1)^2",
    "exp(-z^2/2)/(2*z^2 + 1)",
    "sqrt(z)*(a + z^2 + b*ln(z))",
    "1/z + (1/4 - nu^2)/z^2",
])
def test_parse_print_roundtrip(text):
    expr = parse_expr(text)
    twice = parse_expr(print_expr(expr))
    assert sp.simplify(twice - expr) == 0


@st.composite
def dialect_exprs(draw):
    coef = st.integers(min_value=-5, max_value=5)
    expr = sum(draw(coef) * s ** draw(st.integers(min_value=0, max_value=3))
               for s in (z, E, nu))
    den = draw(st.integers(min_value=1, max_value=4)) + z ** 2
    if draw(st.booleans()):
        expr = expr / den
    if draw(st.booleans()):
        expr = expr * sp.exp(-z ** 2 / 2)
    return expr


@given(dialect_exprs())
@settings(max_examples=30, deadline=None)
def test_print_parse_identity(expr):
    assert sp.simplify(parse_expr(print_expr(expr)) - expr) == 0
