import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from icosashimura.catalog import (CURVE_NAMES, DEFAULT_WINDOW, SHIMURA_LABEL, c_zero_sections, catalog, curve,
                                  curve_residual, factor_out, fiber_consistency, figure5_csv, figure5_svg,
                                  hm_constraint_residual, kummer_display, kummer_specialize, numeric_points,
                                  passes_cusp, random_off_locus_points, rational_roots, reproduce,
                                  reproduce_21_workaround, sample_rational_points, solve_linear_C)
from icosashimura.moduli import ICOSA_WEIGHTS, WPoint
from icosashimura.ratfun import UPoly

F = Fraction
P = lambda *c: WPoint(c, ICOSA_WEIGHTS)


def test_catalog_shapes():
    degs = {c.name: c.degree() for c in catalog()}
    assert degs["R1"] == 5 and degs["R2"] == 5 and degs["MonoGene"] == 25
    assert degs["L2"] == 30
    assert SHIMURA_LABEL == {**SHIMURA_LABEL, "R1": 10, "R2": 6, "R3": 15, "R4": 14}
    for name in CURVE_NAMES:
        c = curve(name)
        assert c.poly.weighted_degree()[0]
        assert c.poly == c.poly.primitive()
        assert c.to_json_obj()["name"] == name
    with pytest.raises(KeyError):
        curve("R9")


def test_residual_examples():
    assert curve_residual("R1", P(1, 1, 4)) == 0
    assert curve_residual("R2", P(1, 0, 0)) == 3125
    assert curve_residual("L1", P(1, 0, 0)) == 0
    assert curve_residual("R2", (F(25, 27), 0)) == 0


def test_cusp():
    got = {n: passes_cusp(n) for n in ("R1", "R2", "R3", "R4", "L1", "L2")}
    assert got == {"R1": False, "R2": False, "R3": False, "R4": False, "L1": True, "L2": True}


C0_TABLE = {
    "R1": [(F(1, 5), 1)],
    "R2": [(F(25, 27), 1)],
    "R3": [(F(-64, 135), 2), (F(4, 135), 1)],
    "R4": [(F(-25, 512), 2), (F(1, 5), 2), (F(25, 27), 1)],
    "L1": [(F(-64, 135), 2), (F(0), 2), (F(25, 27), 1)],
    "L2": [(F(-64, 135), 2), (F(0), 6), (F(1, 5), 2)],
}


@pytest.mark.parametrize("name", sorted(C0_TABLE))
def test_c_zero_sections(name):
    sl = c_zero_sections(name)
    assert sorted(sl.roots) == sorted(C0_TABLE[name])


roots = st.lists(st.builds(Fraction, st.integers(-30, 30), st.integers(1, 9)), min_size=1, max_size=5)


@settings(max_examples=40)
@given(roots, st.integers(1, 7))
def test_rational_roots_recovers_factors(rs, lead):
    f = UPoly([lead], "t")
    for r in rs:
        f = f * UPoly([-r, 1], "t")
    f = f * UPoly([1, 0, 1], "t")      # an irrational factor stays in the remainder
    found, rest = rational_roots(f)
    expect = {}
    for r in rs:
        expect[r] = expect.get(r, 0) + 1
    assert dict(found) == expect
    assert rest.degree() == 2


def test_sampling_exact_points():
    for name in ("R1", "R2"):
        pts = sample_rational_points(name, 4, seed=1)
        assert len(pts) == 4
        assert all(curve_residual(name, p) == 0 for p in pts)
    assert curve_residual("R2", P(1, 0, F(-3125, 243))) == 0
    pts = sample_rational_points("R1", 3, seed=1, avoid=[curve("R2").poly])
    assert all(curve("R2").poly.evaluate(dict(zip("ABC", p.coords))) != 0 for p in pts)


def test_numeric_points_precision():
    pts = numeric_points("R3", 3, seed=0)
    assert len(pts) == 3
    assert all(p.residual < 1e-20 for p in pts)


def test_fiber_consistency_58():
    for p in (P(1, 1, 4), P(1, 0, -1), P(1, 2, 9), P(1, 0, F(-3125, 243))):
        assert fiber_consistency((5, 8), p)
    for p in (P(1, 1, 1), P(1, 2, 3)):
        assert not fiber_consistency((5, 8), p)


def test_off_locus_points():
    union = curve("MonoGene").poly
    pts = random_off_locus_points(union, 4, seed=2)
    assert len(pts) == 4
    assert all(union.evaluate(dict(zip("ABC", p.coords))) != 0 for p in pts)


def test_factor_out():
    r1, r2 = curve("R1").poly, curve("R2").poly
    mult, rest = factor_out(r1 ** 2 * r2 * 7, [("R1", r1), ("R2", r2), ("L1", curve("L1").poly)])
    assert mult == {"R1": 2, "R2": 1, "L1": 0}
    assert rest.is_constant()


def test_reproduce_58():
    rep = reproduce("5,8")
    assert rep.status == "pass", rep.checks
    assert rep.generators == [curve("MonoGene").poly]
    assert {c.name: c.multiplicity for c in rep.components} == {"R1": 1, "R2": 1, "L1": 1}
    assert rep.to_json_obj()["generator_degrees"] == [25]


def test_reproduce_21_workaround():
    rep = reproduce_21_workaround()
    assert rep.status == "pass", rep.checks
    assert rep.checks["parameter-side generator matches the displayed product"]
    assert rep.checks["R4 divides every generator"]


def test_reproduce_unknown():
    with pytest.raises(ValueError):
        reproduce("5,13")


def test_kummer_specializations():
    for D in (6, 10):
        assert kummer_specialize(D) == kummer_display(D)
    with pytest.raises(ValueError):
        kummer_specialize(14)
    with pytest.raises(ValueError):
        solve_linear_C("R3")


def test_covering_constraints():
    assert hm_constraint_residual(10, 0, 2) == 0
    assert hm_constraint_residual(6, 2, 1) == 15


def test_figure_exports():
    csv = figure5_csv(samples=21, grid=30)
    lines = csv.strip().splitlines()
    assert lines[0] == "curve,X,Y,residual"
    names = {ln.split(",")[0] for ln in lines[1:]}
    assert names == {"R1", "R2", "icosa"}
    for ln in lines[1:]:
        name, x, y, r = ln.split(",")
        x0, x1, y0, y1 = DEFAULT_WINDOW
        assert x0 - 1e-9 <= float(x) <= x1 + 1e-9 and y0 - 1e-9 <= float(y) <= y1 + 1e-9
        if name != "icosa":
            assert abs(float(r)) < 1e-9
    root = ET.fromstring(figure5_svg(samples=21, grid=30))
    assert root.tag.endswith("svg")
    assert figure5_csv(samples=21, grid=30) == csv
