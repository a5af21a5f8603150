from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ncham.scalars import (
    ScalarContext,
    ScalarError,
    plain_context,
    polar_context,
    reduce_relations,
    scalar_arith,
    scalar_diff,
)
from oracles import to_expr

CTX = plain_context(("q1", "q2"))
POLAR = polar_context()
Q1, Q2 = sympy.symbols("q1 q2")
HS = sympy.Symbol("h")

terms = st.lists(
    st.tuples(st.integers(-4, 4), st.integers(0, 3), st.integers(0, 2), st.integers(0, 1)),
    min_size=1,
    max_size=4,
)


def build(spec):
    """The same polynomial as a Scalar and as a sympy expression."""
    s, e = CTX.zero, sympy.Integer(0)
    for c, a, b, k in spec:
        s = s + CTX.coerce(c) * CTX.symbol("q1") ** a * CTX.symbol("q2") ** b * CTX.h**k
        e = e + c * Q1**a * Q2**b * HS**k
    return s, e


def test_rational_addition():
    half, third = CTX.coerce(Fraction(1, 2)), CTX.coerce(Fraction(1, 3))
    assert scalar_arith("add", half, third) == CTX.coerce(Fraction(5, 6))


def test_polar_square_of_sine():
    s = POLAR.symbol("s")
    assert scalar_arith("mul", s, s) == POLAR.parse("1 - c^2")


def test_division_round_trip_example():
    q = CTX.symbol("q1")
    a = CTX.parse("3*q1^2 + 1")
    assert scalar_arith("mul", scalar_arith("div", a, q), q) == a


def test_division_by_zero_is_reported():
    with pytest.raises(ZeroDivisionError):
        scalar_arith("div", CTX.one, CTX.zero)


def test_unknown_operation():
    with pytest.raises(ScalarError):
        scalar_arith("pow", CTX.one, CTX.one)


def test_canonical_sign_and_gcd():
    assert CTX.parse("1/(-q1)") == -CTX.parse("1/q1")
    assert str(CTX.parse("(2*q1 + 2)/(4*q1^2 - 4)")) == "1/(-2 + 2*q1)"


@settings(max_examples=60, deadline=None)
@given(terms, terms, terms)
def test_arithmetic_matches_sympy(ta, tb, tc):
    a, ea = build(ta)
    b, eb = build(tb)
    c, ec = build(tc)
    assert sympy.expand(to_expr(a * b + c) - (ea * eb + ec)) == 0
    if b:
        assert sympy.cancel(to_expr(a / b) - ea / eb) == 0


@settings(max_examples=60, deadline=None)
@given(terms, terms, terms)
def test_field_laws(ta, tb, tc):
    a, b, c = build(ta)[0], build(tb)[0], build(tc)[0]
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    if a:
        assert a * a.inverse() == CTX.one
    if b:
        assert scalar_arith("mul", scalar_arith("div", a, b), b) == a


def test_polynomial_derivative():
    ctx = plain_context(("q",))
    assert scalar_diff(ctx.parse("q^3 + q"), "q") == ctx.parse("3*q^2 + 1")


def test_polar_derivative_table():
    assert scalar_diff(POLAR.symbol("c"), "theta") == -POLAR.symbol("s")
    assert scalar_diff(POLAR.symbol("s"), "theta") == POLAR.symbol("c")
    assert scalar_diff(POLAR.symbol("c"), "r") == POLAR.zero


def test_unknown_coordinate():
    with pytest.raises(ScalarError):
        scalar_diff(CTX.symbol("q1"), "z")


@settings(max_examples=60, deadline=None)
@given(terms, terms)
def test_leibniz_and_quotient_rules(ta, tb):
    a, ea = build(ta)
    b, eb = build(tb)
    assert scalar_diff(a * b, "q1") == scalar_diff(a, "q1") * b + a * scalar_diff(b, "q1")
    if b:
        quotient = scalar_diff(a / b, "q2")
        assert sympy.cancel(to_expr(quotient) - sympy.diff(ea / eb, Q2)) == 0


@settings(max_examples=40, deadline=None)
@given(terms, terms)
def test_mixed_partials_commute(ta, tb):
    a = build(ta)[0]
    b = build(tb)[0]
    x = a / b if b else a
    assert x.diff("q1").diff("q2") == x.diff("q2").diff("q1")


def test_reduction_examples():
    s, c = POLAR.symbol("s"), POLAR.symbol("c")
    assert reduce_relations(s * s * c) == c - c**3
    assert str(s**4) == "1 - 2*c^2 + c^4"
    already = POLAR.parse("c^3 + r*s")
    assert reduce_relations(already) == already


def test_polar_relation_compatible_with_derivation():
    s, c = POLAR.symbol("s"), POLAR.symbol("c")
    assert s * s + c * c == POLAR.one
    assert scalar_diff(s * s + c * c, "theta") == POLAR.zero
    assert POLAR.self_check() == []


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(0, 4), st.integers(0, 4)), min_size=1, max_size=4))
def test_reduction_idempotent_and_multiplicative(spec):
    s, c = POLAR.symbol("s"), POLAR.symbol("c")
    x = POLAR.zero
    for k, i, j in spec:
        x = x + POLAR.coerce(k) * s**i * c**j
    assert x.degree("s") <= 1
    assert reduce_relations(reduce_relations(x)) == reduce_relations(x)
    assert reduce_relations(x * x) == reduce_relations(reduce_relations(x) * reduce_relations(x))


def test_bad_contexts_rejected():
    with pytest.raises(ScalarError):
        ScalarContext(("x",), relations=[("x^2", "x^3")])
    with pytest.raises(ScalarError):
        ScalarContext(("x",), {"f": {"x": "g"}})
    with pytest.raises(ScalarError):
        ScalarContext(("h",))
    with pytest.raises(ScalarError):
        ScalarContext(("x", "x"))


def test_function_symbol_chain():
    ctx = ScalarContext(("x",), {"f": {"x": "f"}})
    assert ctx.parse("f^2*x").diff("x") == ctx.parse("f^2 + 2*x*f^2")


def test_h_is_central_and_constant():
    assert scalar_diff(POLAR.h * POLAR.symbol("r"), "r") == POLAR.h
    assert POLAR.h * POLAR.symbol("s") == POLAR.symbol("s") * POLAR.h
