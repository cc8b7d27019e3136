import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from icosashimura.quaternion import (J4, TRIPLES, DiscTriple, QForm, QuatAlg, all_representations,
                                     definite_bounds, delta_form, eta_basis, hashimoto_omega, legendre, pairing_matrix,
                                     represents, singular_relation_identity, singular_relation_invariant,
                                     singular_relation_residual, triple)
from icosashimura.ratfun import UPoly
from strategies import rationals

# (D, discriminant) -> a coprime witness (m, n) with Delta_D(m, n) = discriminant
WITNESSES = {
    (6, 5): (5, -1), (6, 8): (4, -1), (6, 12): (6, -1), (6, 21): (9, -2),
    (10, 5): (5, -1), (10, 8): (4, -1),
    (14, 5): (1, 0), (14, 12): (6, -1), (14, 21): (7, -1),
    (15, 5): (25, -2), (15, 12): (12, -1),
}


def test_triples_are_valid():
    for D, t in TRIPLES.items():
        assert t.a * t.a * t.D + 1 == t.p * t.b
        assert t.p % 8 == 5
        QuatAlg(t.D, t.p)
    with pytest.raises(ValueError):
        DiscTriple(14, 5, 2, 21)
    with pytest.raises(KeyError):
        triple(22)


def test_algebra_validation():
    with pytest.raises(ValueError):
        QuatAlg(6, 7)
    with pytest.raises(ValueError):
        QuatAlg(5, 13)
    with pytest.raises(ValueError):
        QuatAlg(6, 13)   # 13 is a square mod 3
    assert legendre(5, 3) == -1


quats = st.tuples(rationals, rationals, rationals, rationals)


@pytest.mark.parametrize("D", sorted(TRIPLES))
@given(x=quats, y=quats)
def test_norm_is_multiplicative(D, x, y):
    B = TRIPLES[D].algebra
    qx, qy = B.elem(*x), B.elem(*y)
    assert (qx * qy).norm() == qx.norm() * qy.norm()
    assert (qx * qy).conj() == qy.conj() * qx.conj()
    assert (qx * qx.conj()).c == (qx.norm(), 0, 0, 0)


def test_generator_relations():
    B = QuatAlg(6, 5)
    assert B.i * B.i == B.one * -6
    assert B.j * B.j == B.one * 5
    assert B.i * B.j == -(B.j * B.i)


@pytest.mark.parametrize("D", sorted(TRIPLES))
def test_pairing_matrix_is_standard(D):
    t = TRIPLES[D]
    assert pairing_matrix(t) == J4
    assert all(x.is_integral() for x in eta_basis(t))


def test_delta_forms():
    assert delta_form(triple(6)).coefficients() == (5, 48, 120)
    assert delta_form(triple(10)).coefficients() == (13, 120, 280)
    f15 = delta_form(triple(15))
    assert f15.coefficients() == (53, 1320, 8220)
    assert f15.positive_definite and f15.discriminant == -240


@pytest.mark.parametrize("key", sorted(WITNESSES))
def test_witness_table(key):
    D, value = key
    f = delta_form(triple(D))
    m, n = WITNESSES[key]
    assert f(m, n) == value
    r = represents(f, value)
    assert r.status == "represented" and f(*r.witness) == value
    assert singular_relation_identity(triple(D), m, n)


def test_21_not_represented_by_delta15():
    f = delta_form(triple(15))
    r = represents(f, 21)
    assert r.status == "not-represented" and r.witness is None
    # the derived bound covers every solution: a wider brute force agrees
    assert all_representations(f, 21, 40) == []


def test_represents_errors_and_indefinite():
    with pytest.raises(ValueError):
        represents(delta_form(triple(6)), 7)
    g = QForm(1, 1, -1)
    with pytest.raises(ValueError):
        represents(g, 5)
    assert represents(g, 5, 10).status == "represented"
    assert represents(QForm(1, 0, -3), 8, 5).status == "inconclusive"


@pytest.mark.parametrize("D", sorted(TRIPLES))
@settings(max_examples=20)
@given(v=st.integers(min_value=1, max_value=120).filter(lambda v: v % 4 in (0, 1)))
def test_represents_matches_brute_force(D, v):
    f = delta_form(triple(D))
    r = represents(f, v)
    sols = all_representations(f, v, max(definite_bounds(f, v)))
    assert (r.status == "represented") == bool(sols)
    if r.witness:
        m, n = r.witness
        assert (m, n) in sols and (-m, -n) in sols


def test_omega_is_symmetric_with_known_entry():
    for t in TRIPLES.values():
        om = hashimoto_omega(t)
        assert om[0][1] == om[1][0]
        D, p, a = t.D, t.p, t.a
        assert om[1][1].num * UPoly([0, p]) == UPoly([-1, -2 * a * D, D]) * om[1][1].den


def test_omega_in_siegel_space_at_i():
    om = hashimoto_omega(triple(6))
    vals = [[complex(*_c(e(1j))) for e in row] for row in om]
    assert vals[1][1].imag > 0
    im = [[v.imag for v in row] for row in vals]
    assert im[0][0] > 0 and im[0][0] * im[1][1] - im[0][1] ** 2 > 0


def _c(z):
    # entries are QuadElem-valued polynomials evaluated at a complex point
    if isinstance(z, complex):
        return z.real, z.imag
    return complex(z).real, complex(z).imag


def test_singular_relation_examples():
    assert singular_relation_identity(triple(6), 5, -1)
    assert singular_relation_invariant(triple(6), 5, -1) == 5
    assert singular_relation_invariant(triple(6), 1, 0) == 5
    assert singular_relation_identity(triple(10), 4, -1)
    assert singular_relation_invariant(triple(10), 4, -1) == 8


@pytest.mark.parametrize("D", sorted(TRIPLES))
def test_singular_relations_on_full_grid(D):
    t = TRIPLES[D]
    bad = [(m, n) for m in range(-10, 11) for n in range(-10, 11) if not singular_relation_identity(t, m, n)]
    assert bad == []


def test_printed_constant_term_breaks_the_relation():
    t = triple(6)
    assert singular_relation_residual(t, 5, -1, displayed=True)
    assert not singular_relation_residual(t, 5, -1)
