"""Weighted projective points, the explicit maps into P(2:3:5:6) and the
modular equations cutting out the Humbert surfaces of discriminant 5 and 8.

Coordinates on P(1:3:5) are called ``A, B, C``; on P(2:3:5:6) they are
``alpha, beta, gamma, delta``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .mpoly import MPoly, poly
from .qfield import as_rat

ICOSA_VARS = ("A", "B", "C")
ICOSA_WEIGHTS = (1, 3, 5)
ICOSA_WEIGHTS_EVEN = (2, 6, 10)
ABCD_VARS = ("alpha", "beta", "gamma", "delta")
ABCD_WEIGHTS = (2, 3, 5, 6)
ABCD_WEIGHTS_EVEN = (4, 6, 10, 12)


# ---------------------------------------------------------------------------
# weighted projective points


def _int_root(n: int, k: int) -> int | None:
    """Exact integer k-th root of n >= 0, or None."""
    if n < 0:
        return None
    if n < 2:
        return n
    r = round(n ** (1.0 / k)) if n < 2**1000 else int(2 ** (n.bit_length() / k))
    # Newton refinement for big values
    while True:
        nr = ((k - 1) * r + n // r ** (k - 1)) // k
        if nr >= r:
            break
        r = nr
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**k == n:
            return cand
    return None


def rational_root(x: Fraction, k: int) -> Fraction | None:
    """A rational y with y**k == x (positive when k is even), or None."""
    x = as_rat(x)
    if x < 0:
        if k % 2 == 0:
            return None
        r = rational_root(-x, k)
        return -r if r is not None else None
    n = _int_root(x.numerator, k)
    d = _int_root(x.denominator, k)
    if n is None or d is None:
        return None
    return Fraction(n, d)


def _power_free_scale(x: Fraction, k: int) -> Fraction:
    """Rational lam such that lam**k * x is an integer with small k-th power part."""
    lam = Fraction(x.denominator)
    n = abs(x.numerator) * x.denominator ** (k - 1)
    # strip k-th powers of small primes from n
    shrink = 1
    p = 2
    while p < 10**4 and p**k <= n:
        while n % p**k == 0:
            n //= p**k
            shrink *= p
        p += 1
    return lam / shrink


class WPoint:
    """A point of a weighted projective space with rational coordinates.

    Coordinates are stored in a canonical representative: the first nonzero
    coordinate of lowest weight is scaled to 1 when a rational scaling does
    that (always possible for weight 1), otherwise to a positive integer free
    of small k-th powers.  Equality never depends on the representative.
    """

    __slots__ = ("coords", "weights")

    def __init__(self, coords: Sequence, weights: Sequence[int], normalize: bool = True):
        coords = tuple(as_rat(c) for c in coords)
        weights = tuple(int(w) for w in weights)
        if len(coords) != len(weights):
            raise ValueError("coordinate and weight vectors differ in length")
        if any(w <= 0 for w in weights):
            raise ValueError(f"weights must be positive, got {weights}")
        if not any(coords):
            raise ValueError("the all-zero vector is not a weighted projective point")
        self.coords = coords
        self.weights = weights
        if normalize:
            self.coords = self._normalized()

    def _normalized(self) -> tuple:
        nz = [i for i, c in enumerate(self.coords) if c]
        i = min(nz, key=lambda j: (self.weights[j], j))
        w, x = self.weights[i], self.coords[i]
        lam = rational_root(1 / x, w)
        if lam is None:
            lam = _power_free_scale(x, w)
            if w % 2 == 1 and x < 0:
                lam = -lam
        return self.scaled_coords(lam)

    def scaled_coords(self, lam) -> tuple:
        lam = as_rat(lam)
        return tuple(c * lam**w for c, w in zip(self.coords, self.weights))

    def scale(self, lam) -> "WPoint":
        return WPoint(self.scaled_coords(lam), self.weights, normalize=False)

    def __eq__(self, other):
        if not isinstance(other, WPoint):
            return NotImplemented
        if self.weights != other.weights:
            return False
        p, q, w = self.coords, other.coords, self.weights
        if [bool(c) for c in p] != [bool(c) for c in q]:
            return False
        nz = [i for i in range(len(p)) if p[i]]
        for a in range(len(nz)):
            for b in range(a + 1, len(nz)):
                i, j = nz[a], nz[b]
                if q[i] ** w[j] * p[j] ** w[i] != q[j] ** w[i] * p[i] ** w[j]:
                    return False
        return True

    def __hash__(self):
        return hash(self.weights)

    def __repr__(self):
        return "WPoint(" + " : ".join(str(c) for c in self.coords) + f"; weights={self.weights})"

    def chart(self, i: int = 0) -> tuple:
        """Affine coordinates after scaling coordinate ``i`` to 1 (needs weight 1)."""
        if self.weights[i] != 1:
            raise ValueError("affine chart needs a weight-one coordinate")
        x = self.coords[i]
        if not x:
            raise ZeroDivisionError("point lies at infinity of this chart")
        return self.scaled_coords(1 / x)

    def to_json_obj(self) -> dict:
        return {"coords": [str(c) for c in self.coords], "weights": list(self.weights)}

    @classmethod
    def from_json_obj(cls, d: dict) -> "WPoint":
        return cls([as_rat(c) for c in d["coords"]], d["weights"])


# ---------------------------------------------------------------------------
# maps


@dataclass(frozen=True)
class ModuliMap:
    """A weighted-homogeneous polynomial map between weighted projective spaces."""

    name: str
    source_vars: tuple[str, ...]
    source_weights: tuple[int, ...]
    target_weights: tuple[int, ...]
    components: tuple[MPoly, ...]

    def __post_init__(self):
        if len(self.components) != len(self.target_weights):
            raise ValueError(f"{self.name}: component count does not match target")
        degs = []
        for comp in self.components:
            comp = comp.with_weights(self.source_weights)
            homog, deg = comp.weighted_degree()
            if not homog:
                raise ValueError(f"{self.name}: component {comp} is not weighted-homogeneous")
            degs.append(deg)
        # all degrees must be one common multiple of the target weights
        ratios = {Fraction(d, w) for d, w in zip(degs, self.target_weights) if d is not None}
        if len(ratios) != 1:
            raise ValueError(f"{self.name}: degrees {degs} not proportional to {self.target_weights}")

    def degrees(self) -> tuple[int, ...]:
        return tuple(c.with_weights(self.source_weights).weighted_degree()[1] for c in self.components)

    def as_substitution(self, target_vars: Sequence[str] = ABCD_VARS) -> dict[str, MPoly]:
        return dict(zip(target_vars, self.components))


def _make_map(name, vars, weights, texts, target=ABCD_WEIGHTS) -> ModuliMap:
    comps = tuple(poly(t, vars, weights) for t in texts)
    return ModuliMap(name, tuple(vars), tuple(weights), tuple(target), comps)


PSI5_TEXT = (
    "25/36*A^2",
    "1/2*(-125/108*A^3 + 5/4*B)",
    "C/32",
    "25/64*B^2 - 5/96*A*C",
)

CHI5_TEXT = (
    "g^2",
    "g^3 + 4*h*k",
    "32*h^2",
    "16*h^2*(4*g + k^2)",
)

CHI8_TEXT = (
    "4/9*(q^2 + 4*q*r + 4*r^2 + 9*r*s)",
    "1/27*(16*(-2*q + 8*r + 3*s)*(q^2 + 4*q*r + 4*r^2 + 9*r*s)"
    " - 12*(-2*q^3 + 4*q^2*r + 40*q*r^2 + 48*r^3 + 4*q^2*s - 35*q*r*s + 94*r^2*s + 36*r*s^2))",
    "-64*r^3*s^2",
    "64/3*r^3*s^2*(-2*q + 8*r + 3*s)",
)

CHI12_TEXT = (
    "1/9*(f^4 - 15*e*f*g + 9*e*g^2)",
    "1/54*(-2*f^6 - 63*e*f^3*g + 54*e^2*g^2 + 81*e*f^2*g^2)",
    "e^3*g^3*(f + g)",
    "1/3*e^3*g^3*(-2*f^3 + 3*e*g - 2*f^2*g + 3*f*g^2 + 3*g^3)",
)

CHI21_TEXT = (
    "1/9*(q1^4 + 54*q1^2*s1 + 24*q1*r1*s1 + 9*s1^2)",
    "1/27*(q1^6 - 135*q1^4*s1 - 72*q1^3*r1*s1 - 405*q1^2*s1^2 - 243*q1*r1*s1^2 - 27*r1^2*s1^2)",
    "-r1^2*s1^4",
    "1/3*s1^4*(q1^2*r1^2 + 6*q1*r1^3 + 3*r1^4 + 6*q1*r1*s1 + 3*s1^2)",
)

IGUSA_CLEBSCH_TEXT = (
    "I4/9",
    "(-I2*I4 + 3*I6)/27",
    "8*I10",
    "2/3*I2*I10",
)


@lru_cache(maxsize=None)
def get_map(name: str) -> ModuliMap:
    """Look up one of: psi5, chi5, chi8, chi12, chi21, igusa-clebsch."""
    if name == "psi5":
        return _make_map(name, ICOSA_VARS, ICOSA_WEIGHTS, PSI5_TEXT)
    if name == "chi5":
        return _make_map(name, ("k", "g", "h"), (1, 2, 5), CHI5_TEXT, ABCD_WEIGHTS_EVEN)
    if name == "chi8":
        return _make_map(name, ("r", "s", "q"), (1, 1, 1), CHI8_TEXT)
    if name == "chi12":
        return _make_map(name, ("e", "f", "g"), (2, 1, 1), CHI12_TEXT, ABCD_WEIGHTS_EVEN)
    if name == "chi21":
        return _make_map(name, ("q1", "r1", "s1"), (1, 1, 2), CHI21_TEXT, ABCD_WEIGHTS_EVEN)
    if name == "igusa-clebsch":
        return _make_map(name, ("I2", "I4", "I6", "I10"), (2, 4, 6, 10), IGUSA_CLEBSCH_TEXT,
                         ABCD_WEIGHTS_EVEN)
    raise KeyError(f"unknown map {name!r}; known: {', '.join(MAP_NAMES)}")


MAP_NAMES = ("psi5", "chi5", "chi8", "chi12", "chi21", "igusa-clebsch")


def apply_map(m: ModuliMap | str, p: WPoint) -> WPoint:
    """Exact image of a point; the result is returned in P(2:3:5:6)."""
    if isinstance(m, str):
        m = get_map(m)
    if tuple(p.weights) != tuple(m.source_weights):
        raise ValueError(f"{m.name} expects weights {m.source_weights}, got {p.weights}")
    pt = dict(zip(m.source_vars, p.coords))
    vals = [c.evaluate(pt) for c in m.components]
    if not any(vals):
        raise ValueError(f"{m.name} is undefined at {p}: every component vanishes")
    return WPoint(vals, ABCD_WEIGHTS)


# ---------------------------------------------------------------------------
# modular equations


MOD5_TEXT = "(-alpha^3 - beta^2 + delta)^2 - 4*alpha*(alpha*beta - gamma)^2"

MOD8_TEXT = """
    1024*alpha^15 - 5120*alpha^12*beta^2 + 10240*alpha^9*beta^4 - 10240*alpha^6*beta^6 +
    5120*alpha^3*beta^8 - 1024*beta^10 - 941056*alpha^11*beta*gamma +
    1053696*alpha^8*beta^3*gamma + 715776*alpha^5*beta^5*gamma -
    828416*alpha^2*beta^7*gamma - 7556464*alpha^10*gamma^2 +
    131492384*alpha^7*beta^2*gamma^2 + 39076880*alpha^4*beta^4*gamma^2 +
    13934400*alpha*beta^6*gamma^2 + 1491324088*alpha^6*beta*gamma^3 -
    918848440*alpha^3*beta^3*gamma^3 - 36968000*beta^5*gamma^3 +
    13611473901*alpha^5*gamma^4 - 718342500*alpha^2*beta^2*gamma^4 +
    9079601250*alpha*beta*gamma^5 + 7737809375*gamma^6 - 343808*alpha^12*delta -
    647168*alpha^9*beta^2*delta + 2234880*alpha^6*beta^4*delta -
    1153024*alpha^3*beta^6*delta - 90880*beta^8*delta + 2442144*alpha^8*beta*gamma*delta
    - 86206272*alpha^5*beta^3*gamma*delta + 12985248*alpha^2*beta^5*gamma*delta -
    1669045416*alpha^7*gamma^2*delta - 1449171160*alpha^4*beta^2*gamma^2*delta +
    268484800*alpha*beta^4*gamma^2*delta - 157452560*alpha^3*beta*gamma^3*delta -
    772939000*beta^3*gamma^3*delta - 15745060125*alpha^2*gamma^4*delta +
    29370256*alpha^9*delta^2 - 56832480*alpha^6*beta^2*delta^2 +
    37166352*alpha^3*beta^4*delta^2 - 2626240*beta^6*delta^2 +
    1230170496*alpha^5*beta*gamma*delta^2 - 155485248*alpha^2*beta^3*gamma*delta^2 -
    27876720*alpha^4*gamma^2*delta^2 + 2388102200*alpha*beta^2*gamma^2*delta^2 -
    2315093000*beta*gamma^3*delta^2 - 86058160*alpha^6*delta^3 +
    3605888*alpha^3*beta^2*delta^3 - 22815760*beta^4*delta^3 -
    1231671584*alpha^2*beta*gamma*delta^3 + 1704478600*alpha*gamma^2*delta^3 +
    85375664*alpha^3*delta^4 + 53878880*beta^2*delta^4 - 28344976*delta^5
"""


@dataclass(frozen=True)
class ModularEquation:
    discriminant: int
    polynomial: MPoly

    def __post_init__(self):
        homog, deg = self.polynomial.weighted_degree()
        expected = {5: 12, 8: 30}[self.discriminant]
        if not homog or deg != expected:
            raise ValueError(f"modular equation for {self.discriminant} has weighted degree {deg}")


@lru_cache(maxsize=None)
def modular_equation(delta: int) -> ModularEquation:
    if delta == 5:
        return ModularEquation(5, poly(MOD5_TEXT, ABCD_VARS, ABCD_WEIGHTS))
    if delta == 8:
        return ModularEquation(8, poly(MOD8_TEXT, ABCD_VARS, ABCD_WEIGHTS))
    raise KeyError(f"no modular equation stored for discriminant {delta}")


def modular_residual(delta: int, p: WPoint):
    """Value of the modular polynomial at the stored representative of ``p``."""
    if tuple(p.weights) != ABCD_WEIGHTS:
        p = WPoint(p.coords, ABCD_WEIGHTS) if tuple(p.weights) == ABCD_WEIGHTS_EVEN else None
        if p is None:
            raise ValueError("point must live in P(2:3:5:6)")
    eq = modular_equation(delta).polynomial
    return eq.evaluate(dict(zip(ABCD_VARS, p.coords)))


def verify_map_identity(m: ModuliMap | str, delta: int) -> bool:
    """True iff the modular equation vanishes identically on the image of ``m``."""
    if isinstance(m, str):
        m = get_map(m)
    eq = modular_equation(delta).polynomial
    comp = eq.compose(m.as_substitution())
    return comp.is_zero()


class NotInImage(ValueError):
    pass


def psi5_invert(p: WPoint) -> WPoint:
    """Preimage of a point of the discriminant-5 Humbert surface in P(1:3:5)."""
    if tuple(p.weights) not in (ABCD_WEIGHTS, ABCD_WEIGHTS_EVEN):
        raise ValueError("point must live in P(2:3:5:6)")
    a, b, c, d = p.coords
    if not a:
        raise NotInImage("alpha = 0 lies outside the chart where the inverse is defined")
    A = rational_root(Fraction(36, 25) * a, 2)
    if A is None:
        raise NotInImage("36*alpha/25 is not a rational square: preimage is not rational")
    B = (2 * b + Fraction(125, 108) * A**3) * Fraction(4, 5)
    C = 32 * c
    if Fraction(25, 64) * B**2 - Fraction(5, 96) * A * C != d:
        raise NotInImage(f"delta coordinate inconsistent: {p} is not in the image")
    return WPoint((A, B, C), ICOSA_WEIGHTS)


def klein_locus_polynomial() -> MPoly:
    return poly("-1728*B^5 + 720*A*C*B^3 - 80*A^2*C^2*B + 64*A^3*(5*B^2 - A*C)^2 + C^3",
                ICOSA_VARS, ICOSA_WEIGHTS)


def klein_locus_residual(p: WPoint):
    if tuple(p.weights) != ICOSA_WEIGHTS:
        raise ValueError("point must live in P(1:3:5)")
    return klein_locus_polynomial().evaluate(dict(zip(ICOSA_VARS, p.coords)))


# ---------------------------------------------------------------------------
# the section of the elliptic fibration over the discriminant-5 surface


SECTION_VARS = ("X", "Y", "t")


# The commonly displayed form of this section carries the opposite sign on
# the terms odd in X; with the psi5 sign convention above it leaves the
# residual 5/2*X*Y^3*t^6.  Flipping X restores the identity exactly.
SECTION_PX_DISPLAYED = "32 + 40*X*t + 5/6*(15*X^2 - 2*Y)*t^2"
SECTION_PY_DISPLAYED = "128 + 240*X*t - 10*(-15*X^2 + Y)*t^2 - 25/4*(-5*X^3 + X*Y)*t^3"


def section_polynomials(displayed: bool = False) -> tuple[MPoly, MPoly]:
    """Numerators ``Px``, ``Py`` with ``x = Px/Y`` and ``y = sqrt(2)*Py/Y^(3/2)``."""
    px = poly(SECTION_PX_DISPLAYED, SECTION_VARS)
    py = poly(SECTION_PY_DISPLAYED, SECTION_VARS)
    if displayed:
        return px, py
    X = poly("X", SECTION_VARS)
    flip = {"X": -X, "Y": poly("Y", SECTION_VARS), "t": poly("t", SECTION_VARS)}
    return px.compose(flip), py.compose(flip)


def section_residual(displayed: bool = False) -> MPoly:
    """Weierstrass equation evaluated on the section, cleared of radicals.

    With (alpha, beta, gamma, delta) the image of (1 : X : Y) this is
    ``Y^3 * (y^2 - x^3 - (-3 alpha t^4 - gamma t^5) x - (t^5 - 2 beta t^6 + delta t^7))``.
    """
    px, py = section_polynomials(displayed)
    subs = {v: poly(v, SECTION_VARS) for v in ("X", "Y")}
    psi = get_map("psi5")
    one = MPoly.constant(1, SECTION_VARS)
    chart = {"A": one, "B": subs["X"], "C": subs["Y"]}
    al, be, ga, de = (comp.compose(chart) for comp in psi.components)
    t = poly("t", SECTION_VARS)
    Y = subs["Y"]
    a_coef = -3 * al * t**4 - ga * t**5
    b_coef = t**5 - 2 * be * t**6 + de * t**7
    return 2 * py**2 - px**3 - a_coef * px * Y**2 - b_coef * Y**3


def section_identity_check(displayed: bool = False) -> bool:
    return section_residual(displayed).is_zero()


def section_point(X, Y, t):
    """Exact ``(x, y^2)`` of the section at a point with Y != 0."""
    X, Y, t = as_rat(X), as_rat(Y), as_rat(t)
    if Y == 0:
        raise ZeroDivisionError("the section has a pole along Y = 0")
    px, py = section_polynomials()
    pt = {"X": X, "Y": Y, "t": t}
    return px.evaluate(pt) / Y, 2 * py.evaluate(pt) ** 2 / Y**3


def weierstrass_rhs(X, Y, t, x):
    """Right-hand side of the Weierstrass equation over (1 : X : Y)."""
    al, be, ga, de = apply_raw("psi5", (1, X, Y))
    t = as_rat(t)
    return x**3 + (-3 * al * t**4 - ga * t**5) * x + (t**5 - 2 * be * t**6 + de * t**7)


def apply_raw(m: ModuliMap | str, coords: Sequence) -> tuple:
    """Component values without projective normalization."""
    if isinstance(m, str):
        m = get_map(m)
    pt = dict(zip(m.source_vars, (as_rat(c) for c in coords)))
    return tuple(c.evaluate(pt) for c in m.components)
