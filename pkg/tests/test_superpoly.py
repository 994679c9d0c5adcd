import random
from fractions import Fraction

import pytest

import oracles
from superpoisson.charts import make_cotangent_antivb_chart, make_darboux_chart
from superpoisson.superpoly import (ParseError, SuperPoly, parse_expr,
                                    substitute, to_text)


def chart():
    return make_darboux_chart(2, 3)


def test_odd_generators_anticommute():
    ch = chart()
    a = ch.gen("xi1")
    b = ch.gen("xi2")
    assert a * b == b * a * Fraction(-1)
    assert (a * b + b * a).is_zero


def test_odd_square_is_zero():
    ch = chart()
    assert (ch.gen("xi1") * ch.gen("xi1")).is_zero


def test_even_generators_commute():
    ch = chart()
    assert ch.gen("x1") * ch.gen("p2") == ch.gen("p2") * ch.gen("x1")


def test_constant_arithmetic():
    ch = chart()
    two = SuperPoly.constant(ch, Fraction(2))
    five = SuperPoly.constant(ch, Fraction(5))
    assert two + five == SuperPoly.constant(ch, Fraction(7))
    assert two * five == SuperPoly.constant(ch, Fraction(10))
    assert (two - two).is_zero
    assert two == 2


def test_power():
    ch = chart()
    x = ch.gen("x1")
    assert x ** 3 == x * x * x
    assert (ch.gen("xi1") ** 2).is_zero


def test_random_ring_axioms():
    ch = chart()
    rng = random.Random(11)
    from superpoisson import sampling
    for _ in range(40):
        a = sampling.random_homogeneous(ch, rng)
        b = sampling.random_homogeneous(ch, rng)
        c = sampling.random_homogeneous(ch, rng)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c


def test_parity_and_weight_accessors():
    ch = chart()
    P = ch.gen("xi1") * ch.gen("p1")
    key = next(iter(P.terms))
    assert P.term_parity(key) == 1
    assert P.term_weight(key) == (3,)
    assert P.parity() == 1
    assert ch.zero().parity() is None


def test_parse_round_trip_random():
    ch = chart()
    rng = random.Random(5)
    from superpoisson import sampling
    for _ in range(30):
        P = sampling.random_homogeneous(ch, rng)
        Q = sampling.random_homogeneous(ch, rng)
        total = P + Q
        again = parse_expr(ch, to_text(total))
        assert again == total


def test_parse_rationals_and_jets():
    ch = chart()
    P = parse_expr(ch, "1/2*x1^2*xi1 - 3*D[f; x1, x2]*p2")
    back = parse_expr(ch, to_text(P))
    assert back == P
    assert "f" in P.symbol_names()


def test_parse_argument_sugar():
    ch = chart()
    assert parse_expr(ch, "f(x1)") == parse_expr(ch, "f")
    with pytest.raises(ParseError):
        parse_expr(ch, "f(p1)")


def test_parse_unary_minus():
    ch = chart()
    assert parse_expr(ch, "-x1 + x1").is_zero


def test_parse_error_has_position():
    ch = chart()
    with pytest.raises(ParseError) as err:
        parse_expr(ch, "x1 + * xi2")
    assert "offset" in str(err.value)


def test_parse_rejects_odd_exponent():
    ch = chart()
    with pytest.raises(ParseError):
        parse_expr(ch, "xi1^2")


def test_left_derivative_oracle_matches_simple_cases():
    ch = chart()
    x1 = ch.name_to_index["x1"]
    xi1 = ch.name_to_index["xi1"]
    xi2 = ch.name_to_index["xi2"]
    P = parse_expr(ch, "x1^3*xi1*xi2")
    assert oracles.left_derivative(P, x1) == parse_expr(ch, "3*x1^2*xi1*xi2")
    assert oracles.left_derivative(P, xi1) == parse_expr(ch, "x1^3*xi2")
    assert oracles.left_derivative(P, xi2) == parse_expr(ch, "-x1^3*xi1")
    S = parse_expr(ch, "g*p1")
    assert oracles.left_derivative(S, x1) == parse_expr(ch, "D[g; x1]*p1")


def test_substitute_identity_and_scaling():
    ch = make_cotangent_antivb_chart(1, 2)
    P = parse_expr(ch, "x1*xi1*p1 + xi1*xi2")
    same = substitute(P, {})
    assert same == P
    doubled = substitute(P, {"xi1": ch.gen("xi1") * Fraction(2)})
    assert doubled == parse_expr(ch, "2*x1*xi1*p1 + 2*xi1*xi2")
