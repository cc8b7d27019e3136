"""Univariate polynomials and rational functions over Q or Q(sqrt d)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .qfield import QuadElem, field_of, simplify_scalar


def _trim(coeffs: list) -> list:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


class UPoly:
    """Dense univariate polynomial, coefficients listed from degree 0 upward."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Sequence = (), var: str = "w"):
        cs = [simplify_scalar(c) for c in coeffs]
        field_of(cs)
        self.coeffs = _trim(cs)
        self.var = var

    @classmethod
    def const(cls, c, var="w"):
        return cls([c], var)

    @classmethod
    def x(cls, var="w"):
        return cls([0, 1], var)

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def lc(self):
        return self.coeffs[-1]

    def __bool__(self):
        return bool(self.coeffs)

    def _lift(self, other):
        if isinstance(other, UPoly):
            if other.var != self.var:
                raise ValueError(f"variable mismatch {self.var} vs {other.var}")
            return other
        if isinstance(other, (int, Fraction, QuadElem)):
            return UPoly([other], self.var)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        a = self.coeffs + [0] * (n - len(self.coeffs))
        b = o.coeffs + [0] * (n - len(o.coeffs))
        return UPoly([x + y for x, y in zip(a, b)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return UPoly([], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return UPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = UPoly([1], self.var)
        for _ in range(n):
            result = result * self
        return result

    def divmod(self, other: "UPoly"):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree()
        inv = 1 / other.lc()
        quot = [Fraction(0)] * max(0, len(rem) - dq)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] * inv
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - c * b
        return UPoly(quot, self.var), UPoly(rem[:dq] if dq > 0 else [], self.var)

    def monic(self) -> "UPoly":
        if not self.coeffs:
            return self
        inv = 1 / self.lc()
        return UPoly([c * inv for c in self.coeffs], self.var)

    def gcd(self, other: "UPoly") -> "UPoly":
        a, b = self, other
        while b:
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + (complex(c) if isinstance(x, complex) and isinstance(c, QuadElem) else c)
        return acc

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, UPoly) else other
        if o is None:
            return NotImplemented
        return self.var == o.var and self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.var, tuple(self.coeffs)))

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            cs = str(c)
            if isinstance(c, QuadElem) and c.b != 0 and c.a != 0:
                cs = f"({cs})"
            if mono:
                cs = mono if cs == "1" else ("-" + mono if cs == "-1" else f"{cs}*{mono}")
            parts.append(cs)
        s = parts[0]
        for p in parts[1:]:
            s += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return s

    def __repr__(self):
        return f"UPoly({self.to_text()!r})"


class RatFun:
    """Quotient ``num/den`` of univariate polynomials, kept reduced."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, var: str = "w", reduce: bool = True):
        if not isinstance(num, UPoly):
            num = UPoly([num], var)
        if den is None:
            den = UPoly([1], num.var)
        elif not isinstance(den, UPoly):
            den = UPoly([den], num.var)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.var != den.var:
            raise ValueError("numerator and denominator use different variables")
        self.num, self.den = num, den
        if reduce:
            self._reduce()

    @property
    def var(self):
        return self.num.var

    def _reduce(self):
        if not self.num:
            self.den = UPoly([1], self.var)
            return
        g = self.num.gcd(self.den)
        if g.degree() > 0:
            self.num = self.num.divmod(g)[0]
            self.den = self.den.divmod(g)[0]
        lc = self.den.lc()
        if lc != 1:
            inv = 1 / lc
            self.num = UPoly([c * inv for c in self.num.coeffs], self.var)
            self.den = UPoly([c * inv for c in self.den.coeffs], self.var)

    def reduced(self) -> "RatFun":
        return RatFun(self.num, self.den)

    def _lift(self, other):
        if isinstance(other, RatFun):
            return other
        if isinstance(other, UPoly):
            return RatFun(other)
        if isinstance(other, (int, Fraction, QuadElem)):
            return RatFun(UPoly([other], self.var))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RatFun(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by the zero rational function")
        return RatFun(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __bool__(self):
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole of rational function at {x}")
        return self.num(x) / d

    def to_text(self) -> str:
        if self.den == UPoly([1], self.var):
            return self.num.to_text()
        return f"({self.num.to_text()})/({self.den.to_text()})"

    def __repr__(self):
        return f"RatFun({self.to_text()!r})"


def ratfun_reduce(f: RatFun) -> RatFun:
    """gcd-reduced form with monic denominator."""
    return RatFun(f.num, f.den)
