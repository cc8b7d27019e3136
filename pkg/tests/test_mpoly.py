import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from icosashimura.mpoly import MAX_EXPONENT, MPoly, ParseError, RingMismatch, exact_divide, poly
from icosashimura.qfield import QuadElem
from strategies import mpolys, rationals

VARS = ("x", "y", "z")
points = st.fixed_dictionaries({v: rationals for v in VARS})


@given(mpolys(), mpolys(), mpolys())
def test_ring_axioms(p, q, r):
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p
    assert p - p == 0


@given(mpolys(), mpolys(), points)
def test_evaluation_is_a_ring_map(p, q, pt):
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)


@given(mpolys(max_exp=2, max_terms=4), mpolys(max_exp=1, max_terms=3), mpolys(max_exp=1, max_terms=3), points)
def test_compose_then_evaluate(p, a, b, pt):
    x, y, z = MPoly.gens(VARS)
    comp = p.compose({"x": a, "y": b, "z": z})
    direct = p.evaluate({"x": a.evaluate(pt), "y": b.evaluate(pt), "z": pt["z"]})
    assert comp.evaluate(pt) == direct


@given(mpolys(), points)
def test_substitute_agrees_with_evaluate(p, pt):
    part = p.substitute({"x": pt["x"]})
    assert "x" not in part.used_vars()
    assert part.evaluate(pt) == p.evaluate(pt)


@given(mpolys())
def test_text_and_json_roundtrip(p):
    assert poly(p.to_text(), VARS) == p
    assert MPoly.from_json(p.to_json()) == p
    assert MPoly.from_json(json.loads(json.dumps(p.to_json_obj()))) == p


@given(mpolys(max_terms=4), mpolys(max_terms=3))
def test_exact_divide_recovers_factor(p, d):
    if d.is_zero():
        return
    q = exact_divide(p * d, d)
    assert q is not None and q * d == p * d


@given(mpolys(max_terms=4, weights=(1, 3, 5)), mpolys(max_terms=3))
def test_exact_divide_mixed_weighting(p, d):
    if d.is_zero():
        return
    q = exact_divide((p * d.with_weights((1, 3, 5))), d)
    assert q is not None and q * d.with_weights((1, 3, 5)) == p * d.with_weights((1, 3, 5))


def test_exact_divide_detects_non_divisor():
    assert exact_divide(poly("x^2 + y", VARS), poly("x + 1", VARS)) is None
    with pytest.raises(ZeroDivisionError):
        exact_divide(poly("x", VARS), MPoly.zero(VARS))


def test_parser_forms():
    p = poly("(x + 2*y)^2 - 3/4*x*y**2 + -z", VARS)
    x, y, z = MPoly.gens(VARS)
    assert p == (x + 2 * y) ** 2 - Fraction(3, 4) * x * y ** 2 - z
    assert poly("2*x*sqrt(5)", VARS).field == 5
    assert poly("x y", "x,y") == poly("x*y", ("x", "y"))


@pytest.mark.parametrize("text", ["x +", "x^y", "w + 1", "(x", "x^-1", "x $ y"])
def test_parser_errors(text):
    with pytest.raises(ParseError):
        poly(text, VARS)


def test_ring_checks():
    with pytest.raises(RingMismatch):
        poly("x", "x y") + poly("x", "x z")
    with pytest.raises(RingMismatch):
        poly("x", VARS, (1, 2, 3)) + poly("x", VARS, (1, 1, 1))
    with pytest.raises(ValueError):
        MPoly(("x", "x"))
    with pytest.raises(ValueError):
        MPoly(VARS, {(1, 0): 1})
    with pytest.raises(ValueError):
        MPoly(VARS, {(-1, 0, 0): 1})


def test_exponent_overflow():
    with pytest.raises(OverflowError):
        MPoly(VARS, {(MAX_EXPONENT + 1, 0, 0): 1})
    with pytest.raises(OverflowError):
        poly("x^2", VARS) ** (MAX_EXPONENT // 2 + 1)


def test_mixed_quadratic_fields():
    with pytest.raises(TypeError):
        poly("sqrt(2)*x", VARS) + poly("sqrt(5)*x", VARS)
    s = poly("sqrt(5)*x + 1", VARS)
    assert (s * s).coefficients_in("x")[1] == MPoly.constant(QuadElem(5, 0, 2), VARS)


def test_weighted_degree_and_primitive():
    p = poly("A^5 + A^2*B + C", "A B C", (1, 3, 5))
    assert p.weighted_degree() == (True, 5)
    assert poly("A + B", "A B C", (1, 3, 5)).weighted_degree()[0] is False
    assert poly("6*x/4 + 9/2*y", VARS).primitive() == poly("x + 3*y", VARS)


def test_to_ring_and_univariate():
    p = poly("x^3 - 2*x + 1", ("x",))
    lifted = p.to_ring(("a", "x"))
    assert lifted.vars == ("a", "x") and lifted.degree("x") == 3
    assert p.univariate_coeffs("x") == [1, -2, 0, 1]
    with pytest.raises(RingMismatch):
        poly("y", "x y").to_ring(("x",))


def test_diff():
    assert poly("x^3*y + y^2", VARS).diff("y") == poly("x^3 + 2*y", VARS)
