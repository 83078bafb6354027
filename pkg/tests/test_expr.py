"""Expression layer: parsing, canonical form, calculus, exact evaluation."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from geoinv.expr import (
    Expr,
    ExprSyntaxError,
    PoleError,
    parse_expr,
)


def e(text, arity=3):
    return parse_expr(text, arity)


class TestParsing:
    def test_literals(self):
        assert str(e("x1^2")) == "x1^2"
        assert str(e("1/(x3^2)")) == "1/(x3^2)"
        assert str(e("42")) == "42"

    def test_cancellation(self):
        assert str(e("x1/x1")) == "1"
        assert e("(x1^2 - x2^2)/(x1 - x2)") == e("x1 + x2")

    def test_negative_exponent_lowers_to_denominator(self):
        assert e("x1^-2") == e("1/(x1^2)")
        assert e("x1^(-2)") == e("1/x1^2")

    def test_precedence_and_unary_minus(self):
        assert e("-x1^2") == e("-(x1^2)")
        assert e("2*x1 + 3*x2*x1") == e("x1*(2 + 3*x2)")
        assert e("1 - 2 - 3") == Expr.const(3, -4)
        assert e("12/4/3") == Expr.const(3, 1)

    def test_syntax_error_reports_position(self):
        with pytest.raises(ExprSyntaxError) as err:
            e("x1 + + x2")
        assert err.value.position == 5

    def test_unknown_coordinate_rejected(self):
        with pytest.raises(ExprSyntaxError):
            e("x4", arity=3)
        with pytest.raises(ExprSyntaxError):
            e("x0")

    def test_non_integer_exponent_rejected(self):
        with pytest.raises(ExprSyntaxError):
            e("x1^x2")

    def test_stray_character(self):
        with pytest.raises(ExprSyntaxError):
            e("x1 + y")

    def test_parse_is_total_over_printer(self):
        rng = random.Random(7)
        from conftest import rand_expr_tree

        for _ in range(60):
            x = rand_expr_tree(rng, 3)
            assert parse_expr(str(x), 3) == x


class TestCanonicalForm:
    def test_zero_representation(self):
        z = e("x1 - x1")
        assert z.is_zero()
        assert str(z) == "0"

    def test_equal_functions_identical_forms(self):
        a = e("(x1 + 1)^2 / (2*x1 + 2)")
        b = e("(x1 + 1)/2")
        assert a == b
        assert hash(a) == hash(b)
        assert str(a) == str(b)

    def test_denominator_sign_normalized(self):
        assert str(e("1/(-x1)")) == "-1/x1"
        assert str(e("x2/(-2)")) == "-x2/2"

    def test_integer_content_split(self):
        assert str(e("(2*x1)/4")) == "x1/2"
        assert str(e("4/(2*x1)")) == "2/x1"

    def test_is_zero_on_products(self):
        assert (e("x1") * (e("1") / e("x1")) - e("1")).is_zero()
        assert (e("(x1+x2)^2") - e("x1^2") - e("2*x1*x2") - e("x2^2")).is_zero()


class TestArithmetic:
    def test_division_by_zero_function(self):
        with pytest.raises(ZeroDivisionError):
            e("1") / e("x1 - x1")

    def test_pow_zero_of_zero(self):
        with pytest.raises(ZeroDivisionError):
            e("0") ** 0

    def test_scale(self):
        assert e("x1").scale(Fraction(3, 2)) == e("3*x1/2")
        assert e("x1").scale(0).is_zero()


class TestEvaluation:
    def test_exact_values(self):
        assert e("x1^2").eval_at([Fraction(3, 2), 0, 0]) == Fraction(9, 4)
        de = e("x1^3").diff(0)
        assert de.eval_at([2, 0, 0]) == 12

    def test_pole_error(self):
        with pytest.raises(PoleError):
            e("1/x1").eval_at([0, 1, 1])

    def test_wrong_length(self):
        with pytest.raises(ValueError):
            e("x1").eval_at([1, 2])


class TestCalculus:
    def test_power_rule(self):
        assert e("x1^2").diff(0) == e("2*x1")

    def test_quotient_rule(self):
        assert e("1/x1").diff(0) == e("-1/(x1^2)")

    def test_diff_commutes_on_samples(self):
        rng = random.Random(99)
        from conftest import rand_expr_tree

        for _ in range(40):
            x = rand_expr_tree(rng, 3)
            assert x.diff(0).diff(1) == x.diff(1).diff(0)

    def test_index_bounds(self):
        with pytest.raises(ValueError):
            e("x1").diff(3)


def _finite_difference(x: Expr, point, k, h=Fraction(1, 10**6)) -> Fraction:
    up = list(point)
    down = list(point)
    up[k] += h
    down[k] -= h
    return (x.eval_at(up) - x.eval_at(down)) / (2 * h)


def test_derivative_matches_finite_difference_oracle():
    """Central differences with exact rational step, compared as floats."""
    rng = random.Random(4242)
    from conftest import rand_expr_tree

    checked = 0
    attempts = 0
    while checked < 100 and attempts < 600:
        attempts += 1
        x = rand_expr_tree(rng, 3)
        point = [Fraction(rng.randint(1, 5), rng.randint(1, 3)) for _ in range(3)]
        k = rng.randrange(3)
        try:
            exact = float(x.diff(k).eval_at(point))
            approx = float(_finite_difference(x, point, k))
        except PoleError:
            continue
        scale = max(1.0, abs(exact), abs(approx))
        assert abs(exact - approx) <= 1e-6 * scale, f"{x} at {point} wrt x{k+1}"
        checked += 1
    assert checked >= 100


# -- hypothesis property tests -------------------------------------------------

_coeffs = st.integers(-4, 4)
_monos = st.tuples(st.integers(0, 2), st.integers(0, 2))


def _poly_dicts():
    return st.dictionaries(_monos, _coeffs, max_size=3).map(
        lambda d: {m: Fraction(c) for m, c in d.items() if c}
    )


@st.composite
def exprs(draw):
    num = draw(_poly_dicts())
    den = draw(_poly_dicts().filter(lambda d: bool(d)))
    return Expr(2, num, den)


@settings(max_examples=60, deadline=None)
@given(exprs(), exprs(), exprs())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a


@settings(max_examples=60, deadline=None)
@given(exprs())
def test_self_difference_is_zero(a):
    assert (a - a).is_zero()


@settings(max_examples=60, deadline=None)
@given(exprs())
def test_printer_parser_round_trip(a):
    assert parse_expr(str(a), 2) == a


@settings(max_examples=40, deadline=None)
@given(exprs())
def test_diff_commutes(a):
    assert a.diff(0).diff(1) == a.diff(1).diff(0)
