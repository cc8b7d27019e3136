"""Quaternion algebras (-D, p / Q), the symplectic eta basis and the
binary quadratic forms attached to a discriminant triple (D; p, a, b).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .qfield import QuadElem, as_rat
from .ratfun import RatFun, UPoly


def _prime_factors(n: int) -> list[int]:
    out = []
    k = 2
    while k * k <= n:
        while n % k == 0:
            out.append(k)
            n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def legendre(a: int, p: int) -> int:
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


@dataclass(frozen=True)
class QuatAlg:
    """The algebra Q + Qi + Qj + Qij with i^2 = -D, j^2 = p, ij = -ji."""

    D: int
    p: int

    def __post_init__(self):
        primes = _prime_factors(self.D)
        if len(set(primes)) != len(primes) or len(primes) % 2:
            raise ValueError(f"D={self.D} must be squarefree with an even number of prime factors")
        if self.p % 8 != 5 or _prime_factors(self.p) != [self.p]:
            raise ValueError(f"p={self.p} must be a prime congruent to 5 mod 8")
        for q in primes:
            if q != 2 and legendre(self.p, q) != -1:
                raise ValueError(f"p={self.p} is a square modulo {q}")

    def elem(self, c0=0, c1=0, c2=0, c3=0) -> "QuatElem":
        return QuatElem(self, (as_rat(c0), as_rat(c1), as_rat(c2), as_rat(c3)))

    @property
    def one(self):
        return self.elem(1)

    @property
    def i(self):
        return self.elem(0, 1)

    @property
    def j(self):
        return self.elem(0, 0, 1)

    @property
    def ij(self):
        return self.elem(0, 0, 0, 1)


@dataclass(frozen=True)
class QuatElem:
    alg: QuatAlg
    c: tuple

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return self.alg.elem(other)
        if not isinstance(other, QuatElem):
            return None
        if other.alg != self.alg:
            raise ValueError("quaternions from different algebras")
        return other

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return QuatElem(self.alg, tuple(x + y for x, y in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        return QuatElem(self.alg, tuple(-x for x in self.c))

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QuatElem(self.alg, tuple(x * other for x in self.c))
        o = self._check(other)
        if o is None:
            return NotImplemented
        a, b = -self.alg.D, self.alg.p
        x0, x1, x2, x3 = self.c
        y0, y1, y2, y3 = o.c
        return QuatElem(self.alg, (
            x0 * y0 + a * x1 * y1 + b * x2 * y2 - a * b * x3 * y3,
            x0 * y1 + x1 * y0 - b * x2 * y3 + b * x3 * y2,
            x0 * y2 + x2 * y0 + a * x1 * y3 - a * x3 * y1,
            x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
        ))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def conj(self) -> "QuatElem":
        c0, c1, c2, c3 = self.c
        return QuatElem(self.alg, (c0, -c1, -c2, -c3))

    def trace(self) -> Fraction:
        return 2 * self.c[0]

    def norm(self) -> Fraction:
        c0, c1, c2, c3 = self.c
        D, p = self.alg.D, self.alg.p
        return c0 * c0 + D * c1 * c1 - p * c2 * c2 - D * p * c3 * c3

    def is_integral(self) -> bool:
        return self.trace().denominator == 1 and self.norm().denominator == 1

    def __repr__(self):
        names = ("", "i", "j", "ij")
        parts = [f"{c}{'*' + n if n else ''}" for c, n in zip(self.c, names) if c]
        return "(" + (" + ".join(parts) if parts else "0") + ")"


def quat_mul(x: QuatElem, y: QuatElem) -> QuatElem:
    return x * y


def quat_conj(x: QuatElem) -> QuatElem:
    return x.conj()


def quat_trace(x: QuatElem) -> Fraction:
    return x.trace()


def quat_norm(x: QuatElem) -> Fraction:
    return x.norm()


# ---------------------------------------------------------------------------
# discriminant triples


@dataclass(frozen=True)
class DiscTriple:
    D: int
    p: int
    a: int
    b: int

    def __post_init__(self):
        if self.a * self.a * self.D + 1 != self.p * self.b:
            raise ValueError(f"a^2*D + 1 != p*b for {self}")

    @property
    def algebra(self) -> QuatAlg:
        return QuatAlg(self.D, self.p)


TRIPLES = {
    6: DiscTriple(6, 5, 2, 5),
    10: DiscTriple(10, 13, 3, 7),
    14: DiscTriple(14, 5, 1, 3),
    15: DiscTriple(15, 53, 22, 137),
}


def triple(D: int) -> DiscTriple:
    try:
        return TRIPLES[D]
    except KeyError:
        raise KeyError(f"no discriminant triple stored for D={D}; known: {sorted(TRIPLES)}") from None


def eta_basis(t: DiscTriple) -> tuple[QuatElem, QuatElem, QuatElem, QuatElem]:
    B = t.algebra
    D, p, a = t.D, t.p, t.a
    i, j, ij, one = B.i, B.j, B.ij, B.one
    w = (j * (a * D) + ij) / p
    eta1 = (i + ij) / 2 - w * Fraction(p - 1, 2)
    eta2 = one * (-a * D) - w
    eta3 = one
    eta4 = (one + j) / 2
    return eta1, eta2, eta3, eta4


def pairing(t: DiscTriple, x: QuatElem, y: QuatElem) -> Fraction:
    """E_rho(x, y) = Tr(rho * x * y') with rho = i^{-1} = -i/D."""
    rho = t.algebra.i * Fraction(-1, t.D)
    return (rho * x * y.conj()).trace()


def pairing_matrix(t: DiscTriple) -> list[list[Fraction]]:
    eta = eta_basis(t)
    return [[pairing(t, x, y) for y in eta] for x in eta]


J4 = [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]


# ---------------------------------------------------------------------------
# quadratic forms


@dataclass(frozen=True)
class QForm:
    A: int
    B: int
    C: int
    source: DiscTriple | None = None

    @property
    def discriminant(self) -> int:
        return self.B * self.B - 4 * self.A * self.C

    @property
    def positive_definite(self) -> bool:
        return self.discriminant < 0 and self.A > 0

    def __call__(self, m: int, n: int) -> int:
        return self.A * m * m + self.B * m * n + self.C * n * n

    def coefficients(self) -> tuple[int, int, int]:
        return (self.A, self.B, self.C)


def delta_form(t: DiscTriple) -> QForm:
    return QForm(t.p, 4 * t.a * t.D, 4 * t.b * t.D, t)


@dataclass(frozen=True)
class Representation:
    value: int
    witness: tuple[int, int] | None
    status: str          # "represented", "not-represented" or "inconclusive"
    bound: int

    @property
    def found(self) -> bool:
        return self.witness is not None


def definite_bounds(f: QForm, value: int) -> tuple[int, int]:
    """Bounds on |m|, |n| for solutions of f(m, n) = value, f positive definite."""
    disc = -f.discriminant
    # 4A f = (2Am + Bn)^2 + disc n^2, and symmetrically for m
    nb = isqrt(4 * f.A * value // disc) + 1
    mb = isqrt(4 * f.C * value // disc) + 1
    return mb, nb


def _int_roots_in_m(f: QForm, n: int, value: int) -> list[int]:
    # A m^2 + (B n) m + (C n^2 - value) = 0
    a, b, c = f.A, f.B * n, f.C * n * n - value
    if a == 0:
        if b == 0:
            return []
        return [-c // b] if c % b == 0 else []
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    r = isqrt(disc)
    if r * r != disc:
        return []
    out = set()
    for num in (-b - r, -b + r):
        if num % (2 * a) == 0:
            out.add(num // (2 * a))
    return sorted(out)


def represents(f: QForm, value: int, bound: int | None = None) -> Representation:
    """Search for coprime (m, n) with f(m, n) = value.

    Pairs are taken up to the sign (m, n) -> (-m, -n) with n <= 0 (and m > 0
    when n = 0), scanning n upward from the most negative.  For a positive
    definite form the bound comes from the form itself and a negative answer
    is a proof; otherwise absence within ``bound`` is inconclusive.
    """
    if value <= 0 or value % 4 not in (0, 1):
        raise ValueError(f"{value} is not a positive discriminant (0 or 1 mod 4)")
    if f.positive_definite:
        _, nb = definite_bounds(f, value)
        complete = True
    else:
        if bound is None:
            raise ValueError("indefinite form needs an explicit search bound")
        nb = bound
        complete = False
    for n in range(-nb, 1):
        for m in _int_roots_in_m(f, n, value):
            if n == 0 and m <= 0:
                continue
            if not complete and abs(m) > bound:
                continue
            if gcd(m, n) == 1:
                return Representation(value, (m, n), "represented", nb)
    return Representation(value, None, "not-represented" if complete else "inconclusive", nb)


def all_representations(f: QForm, value: int, bound: int) -> list[tuple[int, int]]:
    """Brute-force list of coprime solutions with |m|, |n| <= bound."""
    out = []
    for n in range(-bound, bound + 1):
        for m in range(-bound, bound + 1):
            if gcd(m, n) == 1 and f(m, n) == value:
                out.append((m, n))
    return out


# ---------------------------------------------------------------------------
# the period map w -> Omega(w) and its singular relations


def _epsilon(p: int) -> tuple[QuadElem, QuadElem]:
    s = QuadElem.sqrt(p)
    return (1 + s) / 2, (1 - s) / 2


def omega_numerators(t: DiscTriple, displayed: bool = False) -> tuple[UPoly, UPoly, UPoly]:
    """N1, N2, N3 with tau_k = N_k / (p w).

    The constant term of N1 is -epsbar^2: with +epsbar^2, as the closed form
    is often printed, no singular relation of the expected shape holds.
    """
    D, p, a = t.D, t.p, t.a
    eps, epsb = _epsilon(p)
    c1 = epsb * epsb if displayed else -(epsb * epsb)
    n1 = UPoly([c1, Fraction((p - 1) * a * D, 2), D * eps * eps])
    n2 = UPoly([epsb, -(p - 1) * a * D, -D * eps])
    n3 = UPoly([-1, -2 * a * D, D])
    return n1, n2, n3


def hashimoto_omega(t: DiscTriple, displayed: bool = False) -> list[list[RatFun]]:
    """The symmetric 2x2 matrix Omega(w) with entries in Q(sqrt p)(w)."""
    n1, n2, n3 = omega_numerators(t, displayed)
    den = UPoly([0, t.p])
    t1, t2, t3 = RatFun(n1, den), RatFun(n2, den), RatFun(n3, den)
    return [[t1, t2], [t2, t3]]


def singular_relation_coefficients(t: DiscTriple, m: int, n: int) -> tuple:
    """(a, b, c, d, e) of a*tau1 + b*tau2 + c*tau3 + d*(tau2^2 - tau1*tau3) + e."""
    if (t.p - 1) % 4:
        raise ValueError("p - 1 must be divisible by 4")
    return (m, m + 2 * t.a * t.D * n, -((t.p - 1) // 4) * m, n, (t.a * t.a * t.D - t.b) * t.D * n)


def singular_relation_invariant(t: DiscTriple, m: int, n: int) -> int:
    a, b, c, d, e = singular_relation_coefficients(t, m, n)
    return b * b - 4 * a * c - 4 * d * e


def singular_relation_residual(t: DiscTriple, m: int, n: int, displayed: bool = False) -> UPoly:
    """(p w)^2 times the relation evaluated on Omega(w); zero iff the relation holds."""
    a, b, c, d, e = singular_relation_coefficients(t, m, n)
    n1, n2, n3 = omega_numerators(t, displayed)
    pw = UPoly([0, t.p])
    linear = n1 * a + n2 * b + n3 * c
    return pw * linear + (n2 * n2 - n1 * n3) * d + pw * pw * e


def singular_relation_identity(t: DiscTriple, m: int, n: int) -> bool:
    """The relation holds identically in w and its invariant equals Delta(m, n)."""
    if singular_relation_residual(t, m, n):
        return False
    return singular_relation_invariant(t, m, n) == delta_form(t)(m, n)


# ---------------------------------------------------------------------------
# the D=6 embedding and its conjugate into N5

M6_BLOCKS = (((-1, 0), (0, 0)), ((1, 0), (0, 1)), ((-1, 0), (0, -1)), ((0, 0), (0, 0)))


def check_omega6_exact() -> list[list[RatFun]]:
    """Entries of the D=6 embedding as rational functions over Q(sqrt 2)(w)."""
    s2 = QuadElem.sqrt(2)
    t1 = RatFun(UPoly([-1, 0, 6]), UPoly([0, 4]))
    t2 = RatFun(UPoly([-s2, -4, -6 * s2]), UPoly([0, 8]))
    t3 = RatFun(UPoly([-1, -4, 6]), UPoly([0, 8]))
    return [[t1, t2], [t2, t3]]


def tilde_omega6_exact() -> list[list[RatFun]]:
    """The conjugated embedding, with image in -tau1 + tau2 + tau3 = 0."""
    s2 = QuadElem.sqrt(2)
    den = UPoly([-1 + s2, 8, 6 * (1 + s2)])
    t1 = RatFun(UPoly([-2 + s2, 4, 6 * (2 + s2)]), den)
    t2 = RatFun(UPoly([s2, 4, 6 * s2]), den)
    t3 = RatFun(UPoly([-2, 0, 12]), den)
    return [[t1, t2], [t2, t3]]


def tilde6_trace_relation() -> RatFun:
    """-tau1 + tau2 + tau3 for the conjugated embedding (identically zero)."""
    m = tilde_omega6_exact()
    return -m[0][0] + m[0][1] + m[1][1]


def _rmat_mul(x, y):
    return [[x[i][0] * y[0][j] + x[i][1] * y[1][j] for j in range(2)] for i in range(2)]


def _rmat_add(x, y):
    return [[x[i][j] + y[i][j] for j in range(2)] for i in range(2)]


def _rmat_inv(x):
    det = x[0][0] * x[1][1] - x[0][1] * x[1][0]
    if not det:
        raise ZeroDivisionError("C*Omega + D is singular")
    return [[x[1][1] / det, -x[0][1] / det], [-x[1][0] / det, x[0][0] / det]]


def omega6_conjugation_exact() -> list[list[RatFun]]:
    """(A W + B)(C W + D)^-1 for the fixed symplectic M, computed over Q(sqrt 2)(w)."""
    W = check_omega6_exact()
    A, B, C, D = ([[RatFun(UPoly([v])) for v in row] for row in blk] for blk in M6_BLOCKS)
    return _rmat_mul(_rmat_add(_rmat_mul(A, W), B), _rmat_inv(_rmat_add(_rmat_mul(C, W), D)))
