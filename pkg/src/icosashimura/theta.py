"""Genus-2 theta constants, the Hilbert modular embedding for Q(sqrt 5),
the period coordinates (X, Y) and the D=6 quaternion embeddings.

Everything here is double precision. Lattice sums are accumulated with
math.fsum over a fixed shell-by-shell order, so results are reproducible
bit for bit.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

SQRT2 = math.sqrt(2.0)
SQRT5 = math.sqrt(5.0)


class ThetaError(ArithmeticError):
    """Raised for points outside the Siegel space or near a pole of X, Y."""


class PoleError(ThetaError):
    pass


# ---------------------------------------------------------------------------
# Siegel points and 2x2 complex linear algebra


Mat2 = tuple[tuple[complex, complex], tuple[complex, complex]]


def _mat(a, b, c, d) -> Mat2:
    return ((complex(a), complex(b)), (complex(c), complex(d)))


def _mul(x: Mat2, y: Mat2) -> Mat2:
    return _mat(
        x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1],
        x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1],
    )


def _add(x: Mat2, y: Mat2) -> Mat2:
    return _mat(x[0][0] + y[0][0], x[0][1] + y[0][1], x[1][0] + y[1][0], x[1][1] + y[1][1])


def _inv(x: Mat2, what: str = "matrix") -> Mat2:
    det = x[0][0] * x[1][1] - x[0][1] * x[1][0]
    scale = max(abs(v) for row in x for v in row) or 1.0
    if abs(det) < 1e-14 * scale * scale:
        raise ThetaError(f"{what} is not invertible (|det| = {abs(det):.3e})")
    return _mat(x[1][1] / det, -x[0][1] / det, -x[1][0] / det, x[0][0] / det)


def max_entry_diff(x: Mat2, y: Mat2) -> float:
    return max(abs(x[i][j] - y[i][j]) for i in range(2) for j in range(2))


def _sym_eigs(a: float, b: float, c: float) -> tuple[float, float]:
    """Eigenvalues of the real symmetric matrix [[a, b], [b, c]], ascending."""
    mean = (a + c) / 2
    rad = math.hypot((a - c) / 2, b)
    return mean - rad, mean + rad


@dataclass(frozen=True)
class SiegelPoint:
    """Symmetric [[tau1, tau2], [tau2, tau3]] with positive definite imaginary part."""

    tau1: complex
    tau2: complex
    tau3: complex

    def __post_init__(self):
        if self.lambda_min() <= 0:
            raise ThetaError(f"imaginary part of {self.matrix()} is not positive definite")

    @classmethod
    def from_matrix(cls, m: Mat2, sym_tol: float = 1e-9) -> "SiegelPoint":
        if abs(m[0][1] - m[1][0]) > sym_tol * (1 + abs(m[0][1])):
            raise ThetaError("matrix is not symmetric")
        return cls(complex(m[0][0]), complex((m[0][1] + m[1][0]) / 2), complex(m[1][1]))

    def matrix(self) -> Mat2:
        return _mat(self.tau1, self.tau2, self.tau2, self.tau3)

    def lambda_min(self) -> float:
        return _sym_eigs(self.tau1.imag, self.tau2.imag, self.tau3.imag)[0]

    def n5_residual(self) -> float:
        return abs(-self.tau1 + self.tau2 + self.tau3)


def in_siegel_space(m: Mat2) -> bool:
    return _sym_eigs(m[0][0].imag, ((m[0][1] + m[1][0]) / 2).imag, m[1][1].imag)[0] > 0


# ---------------------------------------------------------------------------
# theta constants


@dataclass(frozen=True)
class ThetaChar:
    a: tuple[int, int]
    b: tuple[int, int]
    index: int | None = None

    def __post_init__(self):
        if any(v not in (0, 1) for v in self.a + self.b):
            raise ValueError("characteristic entries must be 0 or 1")
        if (self.a[0] * self.b[0] + self.a[1] * self.b[1]) % 2:
            raise ValueError(f"odd characteristic a={self.a}, b={self.b}")


# index j -> (a, b) for the ten even characteristics
THETA_TABLE = {
    0: ((0, 0), (0, 0)),
    1: ((1, 1), (0, 0)),
    2: ((0, 0), (1, 1)),
    3: ((1, 1), (1, 1)),
    4: ((0, 1), (0, 0)),
    5: ((1, 0), (0, 0)),
    6: ((0, 0), (0, 1)),
    7: ((1, 0), (0, 1)),
    8: ((0, 0), (1, 0)),
    9: ((0, 1), (1, 0)),
}

CHARS = tuple(ThetaChar(a, b, j) for j, (a, b) in THETA_TABLE.items())


def theta_char(j: int) -> ThetaChar:
    return CHARS[j]


def truncation_radius(lam_min: float, tol: float) -> int:
    """Smallest G with exp(-pi * lam_min * (G - 1)^2) < tol."""
    if lam_min <= 0:
        raise ThetaError("lambda_min of Im(Omega) must be positive")
    if tol <= 0:
        raise ValueError("tol must be positive")
    return 1 + math.ceil(math.sqrt(-math.log(tol) / (math.pi * lam_min))) + 1


def _shell(k: int):
    """Lattice points of max-norm k in a fixed order."""
    if k == 0:
        yield (0, 0)
        return
    for g1 in range(-k, k + 1):
        yield (g1, -k)
    for g2 in range(-k + 1, k + 1):
        yield (k, g2)
    for g1 in range(k - 1, -k - 1, -1):
        yield (g1, k)
    for g2 in range(k - 1, -k, -1):
        yield (-k, g2)


def theta_const(omega: SiegelPoint, ch: ThetaChar, tol: float = 1e-16) -> complex:
    """theta(Omega; a, b) = sum over g in Z^2 of exp(pi i (v^T Omega v + g.b)), v = g + a/2."""
    lam = omega.lambda_min()
    if lam <= 0:
        raise ThetaError("point is outside the Siegel space")
    G = truncation_radius(lam, tol)
    t1, t2, t3 = omega.tau1, omega.tau2, omega.tau3
    ha1, ha2 = ch.a[0] / 2, ch.a[1] / 2
    b1, b2 = ch.b
    re, im = [], []
    for k in range(G + 1):
        for g1, g2 in _shell(k):
            v1, v2 = g1 + ha1, g2 + ha2
            q = v1 * v1 * t1 + 2 * v1 * v2 * t2 + v2 * v2 * t3
            sign = -1 if (g1 * b1 + g2 * b2) % 2 else 1
            term = cmath.exp(1j * math.pi * q) * sign
            re.append(term.real)
            im.append(term.imag)
    return complex(math.fsum(re), math.fsum(im))


def theta_all(omega: SiegelPoint, tol: float = 1e-16) -> list[complex]:
    return [theta_const(omega, ch, tol) for ch in CHARS]


def genus1_theta(z: complex, a: int, b: int, tol: float = 1e-17) -> complex:
    """Classical theta with characteristic: sum over n of exp(pi i ((n + a/2)^2 z + n b))."""
    if z.imag <= 0:
        raise ThetaError("z must lie in the upper half plane")
    N = truncation_radius(z.imag, tol)
    re, im = [], []
    for n in range(-N, N + 1):
        v = n + a / 2
        term = cmath.exp(1j * math.pi * v * v * z) * (-1 if (n * b) % 2 else 1)
        re.append(term.real)
        im.append(term.imag)
    return complex(math.fsum(re), math.fsum(im))


# ---------------------------------------------------------------------------
# Hilbert modular embedding for Q(sqrt 5)


def mu5(z1: complex, z2: complex) -> SiegelPoint:
    if z1.imag <= 0 or z2.imag <= 0:
        raise ThetaError("z1 and z2 must lie in the upper half plane")
    s = 2 * SQRT5
    return SiegelPoint(
        ((1 + SQRT5) * z1 - (1 - SQRT5) * z2) / s,
        2 * (z1 - z2) / s,
        ((-1 + SQRT5) * z1 + (1 + SQRT5) * z2) / s,
    )


def mu5_inverse(omega: SiegelPoint, tol: float = 1e-9) -> tuple[complex, complex]:
    """Recover (z1, z2) from a point of N5 (where -tau1 + tau2 + tau3 = 0)."""
    res = omega.n5_residual()
    scale = 1 + abs(omega.tau1) + abs(omega.tau2) + abs(omega.tau3)
    if res > tol * scale:
        raise ThetaError(f"point is off N5: |-tau1 + tau2 + tau3| = {res:.3e}")
    d = SQRT5 * omega.tau2
    z1 = omega.tau1 - (1 - SQRT5) * d / (2 * SQRT5)
    return z1, z1 - d


# products theta_{j1 j2 ...} used by the Mueller forms
_G2_TERMS = ((1, "0145"), (-1, "1279"), (-1, "3478"), (1, "0268"), (1, "3569"))
_S6_TERMS = ("012478", "012569", "034568", "236789", "134579")
_S10_TERM = "0123456789"


@dataclass(frozen=True)
class MullerForms:
    g2: complex
    s6: complex
    s10: complex
    guard_scale: float


def muller_forms(thetas: Sequence[complex]) -> MullerForms:
    def prod(idx: str) -> complex:
        out = 1
        for c in idx:
            out *= thetas[int(c)]
        return out

    g2_parts = [sgn * prod(idx) for sgn, idx in _G2_TERMS]
    g2 = complex(math.fsum(p.real for p in g2_parts), math.fsum(p.imag for p in g2_parts))
    s6_parts = [prod(idx) ** 2 for idx in _S6_TERMS]
    s6 = complex(math.fsum(p.real for p in s6_parts), math.fsum(p.imag for p in s6_parts)) / 2 ** 8
    s10 = prod(_S10_TERM) ** 2 / 2 ** 12
    return MullerForms(g2, s6, s10, max(abs(p) for p in g2_parts))


G2_GUARD = 1e-8


def hilbert_XY(z1: complex, z2: complex, tol: float = 1e-16) -> tuple[complex, complex]:
    """X = 2^5 5^2 s6 / g2^3 and Y = 2^10 5^5 s10 / g2^5 at mu5(z1, z2)."""
    forms = muller_forms(theta_all(mu5(z1, z2), tol))
    if abs(forms.g2) < G2_GUARD * forms.guard_scale:
        raise PoleError(f"g2 is too close to zero at ({z1}, {z2}): |g2| = {abs(forms.g2):.3e}")
    X = 2 ** 5 * 5 ** 2 * forms.s6 / forms.g2 ** 3
    Y = 2 ** 10 * 5 ** 5 * forms.s10 / forms.g2 ** 5
    return X, Y


# ---------------------------------------------------------------------------
# elliptic modular function


def elliptic_J(z: complex, tol: float = 1e-14) -> complex:
    """Klein's absolute invariant j(z)/1728, so that J(i) = 1."""
    if z.imag <= 0:
        raise ThetaError("z must lie in the upper half plane")
    q = cmath.exp(2j * math.pi * z)
    aq = abs(q)
    s3, s5 = [], []
    n = 1
    while True:
        qn = q ** n
        f = qn / (1 - qn)
        s3.append(n ** 3 * f)
        s5.append(n ** 5 * f)
        if n ** 5 * aq ** n / (1 - aq ** n) < tol * 1e-3:
            break
        n += 1
    t3 = complex(math.fsum(v.real for v in s3), math.fsum(v.imag for v in s3))
    t5 = complex(math.fsum(v.real for v in s5), math.fsum(v.imag for v in s5))
    e4 = 1 + 240 * t3
    e6 = 1 - 504 * t5
    return e4 ** 3 / (e4 ** 3 - e6 ** 2)


# ---------------------------------------------------------------------------
# symplectic matrices and the D=6 embeddings


J4 = ((0, 0, 1, 0), (0, 0, 0, 1), (-1, 0, 0, 0), (0, -1, 0, 0))


def _imatmul(x, y):
    return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(4)) for j in range(4)) for i in range(4))


@dataclass(frozen=True)
class Sp4Z:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise ValueError("Sp4Z needs a 4x4 integer matrix")
        if any(v != int(v) for r in self.rows for v in r):
            raise ValueError("entries must be integers")
        mt = tuple(tuple(rows[j][i] for j in range(4)) for i in range(4))
        if _imatmul(_imatmul(mt, J4), rows) != J4:
            raise ValueError("matrix is not symplectic: M^T J M != J")
        object.__setattr__(self, "rows", rows)

    def blocks(self):
        r = self.rows
        A = _mat(r[0][0], r[0][1], r[1][0], r[1][1])
        B = _mat(r[0][2], r[0][3], r[1][2], r[1][3])
        C = _mat(r[2][0], r[2][1], r[3][0], r[3][1])
        D = _mat(r[2][2], r[2][3], r[3][2], r[3][3])
        return A, B, C, D

    def act(self, omega: Mat2) -> Mat2:
        A, B, C, D = self.blocks()
        return _mul(_add(_mul(A, omega), B), _inv(_add(_mul(C, omega), D), "C*Omega + D"))


M6 = Sp4Z(((-1, 0, 1, 0), (0, 0, 0, 1), (-1, 0, 0, 0), (0, -1, 0, 0)))

W0 = (1j - 1 / SQRT2) / 3


def check_omega6(w: complex) -> Mat2:
    """The quaternion modular embedding for D=6 in its original (non-N5) form."""
    off = -3 * SQRT2 * w / 4 - 0.5 - SQRT2 / (8 * w)
    return _mat(1.5 * w - 1 / (4 * w), off, off, 0.75 * w - 0.5 - 1 / (8 * w))


def tilde_omega6_matrix(w: complex) -> Mat2:
    den = -1 + SQRT2 + 8 * w + 6 * (1 + SQRT2) * w * w
    t1 = (-2 + SQRT2 + 4 * w + 6 * (2 + SQRT2) * w * w) / den
    t2 = (SQRT2 + 4 * w + 6 * SQRT2 * w * w) / den
    t3 = (-2 + 12 * w * w) / den
    return _mat(t1, t2, t2, t3)


def tilde_omega6(w: complex) -> SiegelPoint:
    """The conjugate of check_omega6 by M6, landing in N5."""
    if w.imag <= 0:
        raise ThetaError("w must lie in the upper half plane")
    return SiegelPoint.from_matrix(tilde_omega6_matrix(w))


def check_omega6_conjugation(w: complex) -> float:
    """Max-entry deviation between M6 acting on check_omega6(w) and the closed form."""
    return max_entry_diff(M6.act(check_omega6(w)), tilde_omega6_matrix(w))


def shimura6_numeric_residual(w: complex, tol: float = 1e-16) -> float:
    """|3125 - 3375 X + 243 Y| / (1 + |X| + |Y|) along the D=6 embedding."""
    z1, z2 = mu5_inverse(tilde_omega6(w))
    X, Y = hilbert_XY(z1, z2, tol)
    return abs(3125 - 3375 * X + 243 * Y) / (1 + abs(X) + abs(Y))


def parse_complex(text: str) -> complex:
    """Accepts 'a+bi' style literals such as '1+1i', '1.3i', '-0.2-0.5i'."""
    t = text.strip().replace(" ", "").replace("I", "i").replace("i", "j")
    if t.endswith("j") and (len(t) == 1 or t[-2] in "+-"):
        t = t[:-1] + "1j"
    try:
        return complex(t)
    except ValueError:
        raise ValueError(f"cannot parse complex literal {text!r}") from None


def format_complex(z: complex, digits: int = 15) -> str:
    re = f"{z.real:.{digits}g}"
    im = f"{abs(z.imag):.{digits}g}"
    return f"{re}{'-' if z.imag < 0 or (z.imag == 0 and math.copysign(1, z.imag) < 0) else '+'}{im}i"
