"""Rational and real-quadratic-field scalars.

Rationals are plain :class:`fractions.Fraction` values.  Elements of
Q(sqrt d) are :class:`QuadElem`; arithmetic between elements of different
fields raises ``TypeError`` instead of promoting.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

Rat = Fraction


def as_rat(x) -> Fraction:
    """Coerce an int, Fraction or ``"num/den"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational")


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


class QuadElem:
    """The number ``a + b*sqrt(d)`` with rational ``a``, ``b``."""

    __slots__ = ("d", "a", "b")

    def __init__(self, d: int, a=0, b=0):
        if not isinstance(d, int) or d < 2 or not is_squarefree(d):
            raise ValueError(f"d={d!r} is not a squarefree integer > 1")
        self.d = d
        self.a = as_rat(a)
        self.b = as_rat(b)

    @classmethod
    def sqrt(cls, d: int) -> "QuadElem":
        return cls(d, 0, 1)

    def _coerce(self, other) -> "QuadElem | None":
        if isinstance(other, QuadElem):
            if other.d != self.d:
                raise TypeError(f"mixed quadratic fields Q(sqrt {self.d}) and Q(sqrt {other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElem(self.d, other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.d, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(self.d, -self.a, -self.b)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.d, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadElem(self.d, self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conj(self) -> "QuadElem":
        return QuadElem(self.d, self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def trace(self) -> Fraction:
        return 2 * self.a

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt d)")
        return QuadElem(self.d, self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadElem(self.d, 1, 0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_rational(self) -> bool:
        return self.b == 0

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, QuadElem):
            return self.d == other.d and self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.d, self.a, self.b))

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def __complex__(self):
        return complex(float(self))

    def __repr__(self):
        return f"QuadElem({self.d}, {self.a}, {self.b})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        root = f"sqrt({self.d})"
        if self.b == 1:
            tail = root
        elif self.b == -1:
            tail = f"-{root}"
        else:
            tail = f"{self.b}*{root}"
        if self.a == 0:
            return tail
        sign = "" if tail.startswith("-") else "+"
        return f"{self.a}{sign}{tail}"


def field_of(values) -> int | None:
    """Return the common ``d`` of the QuadElem values, or None if all rational."""
    d = None
    for v in values:
        if isinstance(v, QuadElem):
            if d is None:
                d = v.d
            elif d != v.d:
                raise TypeError(f"mixed quadratic fields Q(sqrt {d}) and Q(sqrt {v.d})")
    return d


def simplify_scalar(x):
    """Demote a QuadElem with zero irrational part to a Fraction."""
    if isinstance(x, QuadElem) and x.b == 0:
        return x.a
    if isinstance(x, int):
        return Fraction(x)
    return x


def to_float(x) -> float:
    return float(x)
