"""Brute-force reference implementations used to cross-check the engines."""

import cmath
import math
import random
from fractions import Fraction
from itertools import combinations_with_replacement

from icosashimura.groebner import MonomialOrder, PolyIdeal, contains, groebner_basis
from icosashimura.mpoly import MPoly
from icosashimura.theta import SiegelPoint, theta_all

XYZ = ("x", "y", "z")


def monomials_of_degree(n: int, d: int) -> list[tuple]:
    out = []
    for combo in combinations_with_replacement(range(n), d):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def _in_row_space(rows: list[dict], target: dict) -> bool:
    """Gaussian elimination over Q: is ``target`` a combination of ``rows``?"""
    pivots: dict = {}
    for r in rows:
        r = dict(r)
        for col, prow in pivots.items():
            if col in r:
                c = r[col]
                for k, v in prow.items():
                    nv = r.get(k, 0) - c * v
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
        if not r:
            continue
        col = min(r)
        inv = 1 / Fraction(r[col])
        r = {k: v * inv for k, v in r.items()}
        for c2, prow in pivots.items():
            if col in prow:
                c = prow[col]
                for k, v in r.items():
                    nv = prow.get(k, 0) - c * v
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
        pivots[col] = r
    t = dict(target)
    for col, prow in pivots.items():
        if col in t:
            c = t[col]
            for k, v in prow.items():
                nv = t.get(k, 0) - c * v
                if nv:
                    t[k] = nv
                else:
                    t.pop(k, None)
    return not t


def macaulay_member(gens: list[MPoly], f: MPoly) -> bool:
    """Membership of a homogeneous ``f`` in the ideal of homogeneous ``gens``.

    In degree d the ideal is spanned by the products m*g with deg(m*g) = d,
    so a rank test on that Macaulay matrix decides membership exactly.
    """
    if f.is_zero():
        return True
    degs = {sum(e) for e in f.terms}
    assert len(degs) == 1, "oracle needs a homogeneous polynomial"
    d = degs.pop()
    n = len(f.vars)
    rows = []
    for g in gens:
        gd = {sum(e) for e in g.terms}
        assert len(gd) == 1
        k = d - gd.pop()
        if k < 0:
            continue
        for m in monomials_of_degree(n, k):
            rows.append({tuple(a + b for a, b in zip(e, m)): c for e, c in g.terms.items()})
    return _in_row_space(rows, f.terms)


def random_homogeneous(rng: random.Random, vars, d: int, terms: int = 3) -> MPoly:
    mons = monomials_of_degree(len(vars), d)
    pick = rng.sample(mons, min(terms, len(mons)))
    return MPoly(vars, {e: rng.choice([-3, -2, -1, 1, 2, 3]) for e in pick})


def genus1_diagonal_oracle(z: complex, tol: float = 1e-17) -> list[complex]:
    """Genus-2 theta constants at diag(z, z) from products of genus-1 series.

    With Omega = diag(z, z) the lattice sum factors, so
    theta[(a1,a2),(b1,b2)] = theta1[a1,b1](z) * theta1[a2,b2](z).
    """
    from icosashimura.theta import CHARS

    def th(a, b):
        N = int(math.ceil(math.sqrt(-math.log(tol) / (math.pi * z.imag)))) + 2
        return sum(cmath.exp(1j * math.pi * ((n + a / 2) ** 2 * z + n * b)) for n in range(-N, N + 1))

    return [th(c.a[0], c.b[0]) * th(c.a[1], c.b[1]) for c in CHARS]


def random_ideal(rng: random.Random):
    k = rng.randint(2, 3)
    return [random_homogeneous(rng, XYZ, rng.randint(1, 2), rng.randint(2, 3)) for _ in range(k)]


def sample_polys(rng, gens):
    """One member built from cofactors and two random homogeneous polynomials."""
    d = rng.randint(2, 3)
    member = MPoly.zero(XYZ)
    for g in gens:
        gd = sum(next(iter(g.terms)))
        if gd <= d:
            member = member + g * random_homogeneous(rng, XYZ, d - gd, 2)
    return [member] + [random_homogeneous(rng, XYZ, d, rng.randint(1, 4)) for _ in range(2)]


def macaulay_agreement(n_ideals: int = 25, seed: int = 20240) -> tuple[int, int]:
    """Checks GB membership against the Macaulay oracle; returns (ideals, disagreements)."""
    rng = random.Random(seed)
    bad = 0
    for _ in range(n_ideals):
        gens = random_ideal(rng)
        for kind in ("grevlex", "lex"):
            gb = groebner_basis(PolyIdeal(gens, MonomialOrder(kind, XYZ)))
            for f in sample_polys(rng, gens):
                if contains(gb, f) != macaulay_member(gens, f):
                    bad += 1
    return n_ideals, bad


def diagonal_factorization_error(n: int = 12, seed: int = 7) -> float:
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(n):
        z = complex(rng.uniform(-1, 1), rng.uniform(0.5, 2.0))
        got = theta_all(SiegelPoint(z, 0j, z))
        ref = genus1_diagonal_oracle(z)
        worst = max(worst, max(abs(g - r) for g, r in zip(got, ref)))
    return worst
