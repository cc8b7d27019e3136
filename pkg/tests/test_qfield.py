from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from icosashimura.qfield import QuadElem, as_rat, field_of, is_squarefree, simplify_scalar
from strategies import rationals

fields = st.sampled_from([2, 3, 5, 6, 13, 53])


@st.composite
def pairs_in_field(draw, n=2):
    d = draw(fields)
    return [QuadElem(d, draw(rationals), draw(rationals)) for _ in range(n)]


@given(pairs_in_field(3))
def test_ring_axioms(xs):
    x, y, z = xs
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == 0


@given(pairs_in_field(2))
def test_norm_multiplicative_and_inverse(xs):
    x, y = xs
    assert (x * y).norm() == x.norm() * y.norm()
    if x:
        assert x * x.inverse() == 1
        assert (y / x) * x == y


@given(pairs_in_field(1), st.integers(min_value=-4, max_value=6))
def test_powers(xs, n):
    x = xs[0]
    if not x and n < 0:
        return
    expected = QuadElem(x.d, 1)
    for _ in range(abs(n)):
        expected = expected * x
    if n < 0:
        expected = expected.inverse()
    assert x ** n == expected


def test_sqrt_squares_to_d():
    assert QuadElem.sqrt(5) ** 2 == 5
    assert QuadElem.sqrt(2) * QuadElem.sqrt(2) == QuadElem(2, 2)
    assert abs(float(QuadElem(5, Fraction(1, 2), Fraction(1, 2))) - 1.6180339887498949) < 1e-15


def test_mixed_fields_rejected():
    with pytest.raises(TypeError):
        QuadElem.sqrt(2) + QuadElem.sqrt(5)


def test_bad_d_rejected():
    for d in (0, 1, 4, 12, -3):
        with pytest.raises(ValueError):
            QuadElem(d, 1, 1)


def test_zero_division():
    with pytest.raises(ZeroDivisionError):
        QuadElem(2).inverse()


def test_rational_interop():
    x = QuadElem(5, 3, 0)
    assert x == 3 and x.is_rational()
    assert hash(x) == hash(Fraction(3))
    assert field_of([Fraction(1), QuadElem(5, 1, 1)]) == 5
    assert field_of([Fraction(1), 2]) is None
    assert simplify_scalar(QuadElem(5, 2, 0)) == 2


def test_as_rat():
    assert as_rat("3/4") == Fraction(3, 4)
    assert as_rat(7) == Fraction(7)
    with pytest.raises(TypeError):
        as_rat(0.5)


def test_is_squarefree():
    assert [n for n in range(1, 20) if is_squarefree(n)] == [1, 2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19]
