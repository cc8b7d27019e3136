from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from icosashimura.moduli import (ABCD_WEIGHTS, ICOSA_VARS, ICOSA_WEIGHTS, MAP_NAMES, NotInImage, WPoint,
                                 apply_raw,
                                 apply_map, get_map, klein_locus_residual, modular_residual, psi5_invert,
                                 rational_root, section_identity_check, section_point, section_residual,
                                 verify_map_identity, weierstrass_rhs)
from icosashimura.mpoly import poly
from strategies import rationals

nonzero_rats = rationals.filter(bool)
icosa_points = st.tuples(nonzero_rats, rationals, rationals).map(lambda c: WPoint(c, ICOSA_WEIGHTS))


def test_wpoint_normalization_and_equality():
    p = WPoint((2, 1, 1), ICOSA_WEIGHTS)
    assert p.coords == (1, Fraction(1, 8), Fraction(1, 32))
    assert p == WPoint((1, Fraction(1, 8), Fraction(1, 32)), ICOSA_WEIGHTS)
    assert WPoint((1, 2, 3), ICOSA_WEIGHTS) != WPoint((1, 2, 4), ICOSA_WEIGHTS)
    assert WPoint((0, 0, 5, 0), ABCD_WEIGHTS) == WPoint((0, 0, 1, 0), ABCD_WEIGHTS)
    assert WPoint((4, 1, 0, 0), ABCD_WEIGHTS) == WPoint((1, Fraction(1, 8), 0, 0), ABCD_WEIGHTS)


def test_wpoint_errors():
    with pytest.raises(ValueError):
        WPoint((0, 0, 0), ICOSA_WEIGHTS)
    with pytest.raises(ValueError):
        WPoint((1, 2), ICOSA_WEIGHTS)
    with pytest.raises(ValueError):
        WPoint((1, 2), (1, 0))


@given(icosa_points, nonzero_rats)
def test_wpoint_scaling_invariance(p, lam):
    assert p.scale(lam) == p
    assert WPoint(p.scale(lam).coords, ICOSA_WEIGHTS).coords == p.coords
    assert WPoint.from_json_obj(p.to_json_obj()) == p


def test_rational_root():
    assert rational_root(Fraction(27, 8), 3) == Fraction(3, 2)
    assert rational_root(Fraction(2), 2) is None
    assert rational_root(Fraction(-8), 3) == -2


def test_maps_are_homogeneous():
    expected = {"psi5": (2, 3, 5, 6), "chi8": (2, 3, 5, 6), "chi12": (4, 6, 10, 12), "chi21": (4, 6, 10, 12)}
    for name in MAP_NAMES:
        m = get_map(name)
        if name in expected:
            assert m.degrees() == expected[name]
    with pytest.raises(KeyError):
        get_map("chi7")


def test_apply_map_examples():
    assert apply_map("psi5", WPoint((1, 0, 0), ICOSA_WEIGHTS)) == WPoint(
        (Fraction(25, 36), Fraction(-125, 216), 0, 0), ABCD_WEIGHTS)
    al, _, ga, de = apply_raw("chi8", (1, 0, 0))
    assert (al, ga, de) == (Fraction(16, 9), 0, 0)
    assert apply_map("igusa-clebsch", WPoint((0, 9, 0, 1), (2, 4, 6, 10))) == WPoint((1, 0, 8, 0), ABCD_WEIGHTS)
    with pytest.raises(ValueError):
        apply_map("psi5", WPoint((1, 0, 0, 0), ABCD_WEIGHTS))


@given(icosa_points, nonzero_rats)
def test_apply_map_scaling_equivariance(p, lam):
    assert apply_map("psi5", p.scale(lam)) == apply_map("psi5", p)


def test_modular_residual_examples():
    assert modular_residual(5, WPoint((0, 0, 1, 0), ABCD_WEIGHTS)) == 0
    assert modular_residual(5, WPoint((1, 0, 0, 0), ABCD_WEIGHTS)) == 1
    img = apply_map("psi5", WPoint((1, 1, 1), ICOSA_WEIGHTS))
    assert img == WPoint((Fraction(25, 36), Fraction(5, 108), Fraction(1, 32), Fraction(65, 192)), ABCD_WEIGHTS)
    assert modular_residual(5, img) == 0
    with pytest.raises(KeyError):
        modular_residual(12, img)


@given(icosa_points)
def test_psi5_image_on_humbert_5(p):
    assert modular_residual(5, apply_map("psi5", p)) == 0


def test_map_identities():
    assert verify_map_identity("psi5", 5)
    assert verify_map_identity("chi8", 8)
    assert not verify_map_identity("chi8", 5)


def test_psi5_invert():
    for c in [(1, 2, 3), (2, 1, 1), (1, Fraction(-3, 7), Fraction(5, 2))]:
        p = WPoint(c, ICOSA_WEIGHTS)
        assert psi5_invert(apply_map("psi5", p)) == p
    assert psi5_invert(apply_map("psi5", WPoint((2, 1, 1), ICOSA_WEIGHTS))).coords == (
        1, Fraction(1, 8), Fraction(1, 32))
    with pytest.raises(NotInImage):
        psi5_invert(WPoint((1, 0, 0, 0), ABCD_WEIGHTS))


@given(icosa_points)
def test_psi5_roundtrip_property(p):
    assert psi5_invert(apply_map("psi5", p)) == p


def test_klein_locus_residual():
    assert klein_locus_residual(WPoint((1, 0, 0), ICOSA_WEIGHTS)) == 0
    assert klein_locus_residual(WPoint((0, 1, 0), ICOSA_WEIGHTS)) == -1728
    assert klein_locus_residual(WPoint((0, 0, 1), ICOSA_WEIGHTS)) == 1


def test_section_identity():
    assert section_identity_check()
    x, y2 = section_point(1, 1, 2)
    assert y2 == weierstrass_rhs(1, 1, 2, x)
    with pytest.raises(ZeroDivisionError):
        section_point(1, 0, 2)


def test_displayed_section_leaves_frozen_residual():
    # the sign convention of the printed form leaves exactly this remainder
    assert not section_identity_check(displayed=True)
    assert section_residual(displayed=True) == poly("5/2*X*Y^3*t^6", ("X", "Y", "t")) or \
        section_residual(displayed=True) == poly("-5/2*X*Y^3*t^6", ("X", "Y", "t"))


@given(rationals, nonzero_rats, rationals)
def test_section_point_lies_on_curve(X, Y, t):
    x, y2 = section_point(X, Y, t)
    assert y2 == weierstrass_rhs(X, Y, t, x)


def test_evaluate_missing_variable():
    with pytest.raises(KeyError):
        poly("A + B", ICOSA_VARS).evaluate({"A": 1})
