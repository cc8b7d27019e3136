from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from icosashimura.qfield import QuadElem
from icosashimura.quaternion import tilde6_trace_relation, tilde_omega6_exact
from icosashimura.ratfun import RatFun, UPoly, ratfun_reduce
from strategies import rationals

upolys = st.lists(rationals, min_size=1, max_size=4).map(UPoly)
nonzero = upolys.filter(bool)


def test_reduce_removes_common_factor():
    f = ratfun_reduce(RatFun(UPoly([-1, 0, 1]), UPoly([-1, 1])))
    assert f.num == UPoly([1, 1]) and f.den == UPoly([1])


def test_denominator_is_monic():
    f = RatFun(UPoly([2]), UPoly([0, 4]))
    assert f.den.lc() == 1 and f.num == UPoly([Fraction(1, 2)])


def test_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        RatFun(UPoly([1]), UPoly([]))
    with pytest.raises(ZeroDivisionError):
        RatFun(UPoly([1])) / RatFun(UPoly([0]))


@given(upolys, nonzero, upolys, nonzero)
def test_field_operations(a, b, c, d):
    f, g = RatFun(a, b), RatFun(c, d)
    assert (f + g) - g == f
    if g:
        assert (f / g) * g == f
    assert f * (g + 1) == f * g + f


@given(upolys, nonzero, rationals)
def test_evaluation(a, b, x):
    f = RatFun(a, b)
    try:
        val = f(x)
    except ZeroDivisionError:
        assert b(x) == 0 or f.den(x) == 0
        return
    assert val * b(x) == a(x)


@given(nonzero, nonzero)
def test_division_algorithm(a, b):
    q, r = a.divmod(b)
    assert q * b + r == a
    assert not r or r.degree() < b.degree()


def test_quadratic_coefficients():
    s2 = QuadElem.sqrt(2)
    f = RatFun(UPoly([s2, 4, 6 * s2]), UPoly([-1 + s2, 8, 6 * (1 + s2)]))
    assert f.den.lc() == 1


def test_tilde6_trace_relation_is_zero():
    assert tilde6_trace_relation().is_zero()


def test_tilde6_tau2_numerator_up_to_scale():
    # the reduced form keeps a monic denominator, so the numerator is rescaled
    tau2 = tilde_omega6_exact()[0][1]
    s2 = QuadElem.sqrt(2)
    scale = 6 * (1 + s2)
    assert tau2.num * scale == UPoly([s2, 4, 6 * s2])
    assert tau2.den * scale == UPoly([-1 + s2, 8, 6 * (1 + s2)])
