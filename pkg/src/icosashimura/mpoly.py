"""Sparse multivariate polynomials over Q or a single real quadratic field.

An :class:`MPoly` lives in a ring given by an ordered tuple of variable names
and an optional tuple of positive integer weights.  Terms are stored as a dict
from exponent tuples to nonzero coefficients (Fractions, or QuadElem for a
fixed Q(sqrt d)).  Values are treated as immutable.

Text form::

    3*A^5 - 5/2*A^2*B + (1+sqrt(5))*C

JSON form::

    {"vars": [...], "weights": [...] | null, "field": d | null,
     "terms": [{"e": [...], "c": "num/den"}, ...]}
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from math import gcd, lcm
from typing import Mapping, Sequence

from .qfield import QuadElem, as_rat

MAX_EXPONENT = 2**31 - 1


class RingMismatch(ValueError):
    """Operands live in different polynomial rings."""


def _coerce_scalar(c):
    if isinstance(c, (Fraction, QuadElem)):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient {c!r}")


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, QuadElem))


def _field(c) -> int | None:
    return c.d if isinstance(c, QuadElem) else None


class MPoly:
    __slots__ = ("vars", "terms", "weights", "field")

    def __init__(self, vars: Sequence[str], terms: Mapping[tuple, object] | None = None,
                 weights: Sequence[int] | None = None):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise ValueError(f"repeated variable names in {vars}")
        if weights is not None:
            weights = tuple(int(w) for w in weights)
            if len(weights) != len(vars) or any(w <= 0 for w in weights):
                raise ValueError(f"weights {weights} must be positive, one per variable")
        n = len(vars)
        clean = {}
        field = None
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n:
                raise ValueError(f"exponent vector {e} does not match {n} variables")
            if any(x < 0 for x in e):
                raise ValueError(f"negative exponent in {e}")
            if any(x > MAX_EXPONENT for x in e):
                raise OverflowError(f"exponent overflow in {e}")
            c = _coerce_scalar(c)
            if not c:
                continue
            f = _field(c)
            if f is not None:
                if field is not None and field != f:
                    raise TypeError(f"mixed quadratic fields {field} and {f}")
                field = f
            clean[e] = clean.get(e, 0) + c
            if not clean[e]:
                del clean[e]
        self.vars = vars
        self.terms = clean
        self.weights = weights
        self.field = field

    # -- construction helpers -------------------------------------------------

    @classmethod
    def _raw(cls, vars, terms, weights, field=None):
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        p.weights = weights
        p.field = field
        return p

    @classmethod
    def gens(cls, vars: Sequence[str], weights: Sequence[int] | None = None) -> tuple["MPoly", ...]:
        vars = tuple(vars)
        out = []
        for i in range(len(vars)):
            e = tuple(1 if j == i else 0 for j in range(len(vars)))
            out.append(cls(vars, {e: 1}, weights))
        return tuple(out)

    @classmethod
    def constant(cls, c, vars: Sequence[str], weights: Sequence[int] | None = None) -> "MPoly":
        return cls(vars, {(0,) * len(tuple(vars)): c}, weights)

    @classmethod
    def zero(cls, vars, weights=None) -> "MPoly":
        return cls(vars, {}, weights)

    def _like(self, terms, field=None, weights=None) -> "MPoly":
        return MPoly._raw(self.vars, terms, self.weights if weights is None else weights, field)

    # -- basic predicates -----------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def __len__(self):
        return len(self.terms)

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def index(self, var: str) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise KeyError(f"variable {var!r} not in ring {self.vars}") from None

    def degree(self, var: str | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = self.index(var)
        return max(e[i] for e in self.terms)

    def used_vars(self) -> tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms))

    # -- ring compatibility ---------------------------------------------------

    def _check_ring(self, other: "MPoly"):
        if self.vars != other.vars:
            raise RingMismatch(f"variable mismatch: {self.vars} vs {other.vars}")
        if self.weights is None:
            return other.weights
        if other.weights is not None and other.weights != self.weights:
            raise RingMismatch(f"weight mismatch: {self.weights} vs {other.weights}")
        return self.weights

    @staticmethod
    def _join_field(f1, f2):
        if f1 is None:
            return f2
        if f2 is None or f1 == f2:
            return f1
        raise TypeError(f"mixed quadratic fields {f1} and {f2}")

    def to_ring(self, vars: Sequence[str], weights: Sequence[int] | None = None) -> "MPoly":
        """Re-express in another ring containing every variable actually used."""
        vars = tuple(vars)
        used = self.used_vars()
        missing = [v for v in used if v not in vars]
        if missing:
            raise RingMismatch(f"variables {missing} not in target ring {vars}")
        pos = [vars.index(v) if v in vars else None for v in self.vars]
        terms = {}
        for e, c in self.terms.items():
            ne = [0] * len(vars)
            for i, x in enumerate(e):
                if x:
                    ne[pos[i]] = x
            terms[tuple(ne)] = c
        return MPoly._raw(vars, terms, tuple(weights) if weights is not None else None, self.field)

    def with_weights(self, weights: Sequence[int] | None) -> "MPoly":
        if weights is not None:
            weights = tuple(weights)
            if len(weights) != len(self.vars) or any(w <= 0 for w in weights):
                raise ValueError(f"bad weights {weights}")
        return MPoly._raw(self.vars, self.terms, weights, self.field)

    # -- arithmetic -----------------------------------------------------------

    def _lift(self, other) -> "MPoly | None":
        if isinstance(other, MPoly):
            return other
        if _is_scalar(other):
            return MPoly.constant(other, self.vars, self.weights)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        w = self._check_ring(o)
        field = self._join_field(self.field, o.field)
        terms = dict(self.terms)
        for e, c in o.terms.items():
            v = terms.get(e)
            if v is None:
                terms[e] = c
            else:
                v = v + c
                if v:
                    terms[e] = v
                else:
                    del terms[e]
        return MPoly._raw(self.vars, terms, w, field)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()}, self.field)

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

    def scale(self, c) -> "MPoly":
        c = _coerce_scalar(c)
        if not c:
            return self._like({})
        field = self._join_field(self.field, _field(c))
        return self._like({e: v * c for e, v in self.terms.items()}, field)

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        w = self._check_ring(other)
        field = self._join_field(self.field, other.field)
        if self.terms and other.terms:
            n = len(self.vars)
            top = [max(e[i] for e in self.terms) + max(e[i] for e in other.terms) for i in range(n)]
            if any(t > MAX_EXPONENT for t in top):
                raise OverflowError("exponent overflow in product")
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = terms.get(e)
                terms[e] = c1 * c2 if v is None else v + c1 * c2
        terms = {e: c for e, c in terms.items() if c}
        return MPoly._raw(self.vars, terms, w, field)

    def __rmul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if _is_scalar(other):
            if not other:
                raise ZeroDivisionError("polynomial division by zero scalar")
            inv = 1 / _coerce_scalar(other)
            return self.scale(inv)
        if isinstance(other, MPoly) and other.is_constant():
            return self / other.constant_value()
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        if n and self.terms:
            top = max(max(e) for e in self.terms)
            if top * n > MAX_EXPONENT:
                raise OverflowError("exponent overflow in power")
        result = MPoly.constant(1, self.vars, self.weights)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.vars == other.vars and self.terms == other.terms
        if _is_scalar(other):
            if not other:
                return not self.terms
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- orders and normalization --------------------------------------------

    def order_key(self, e: tuple) -> tuple:
        """Graded reverse lexicographic key (weighted when weights are set)."""
        w = self.weights
        deg = sum(a * b for a, b in zip(e, w)) if w else sum(e)
        return (deg, tuple(-x for x in reversed(e)))

    def sorted_terms(self) -> list[tuple[tuple, object]]:
        return sorted(self.terms.items(), key=lambda t: self.order_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[tuple, object]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=self.order_key)
        return e, self.terms[e]

    def leading_coefficient(self):
        return self.leading_term()[1]

    def primitive(self) -> "MPoly":
        """Normalize: integer coprime content with positive leading coefficient.

        Over Q(sqrt d) the polynomial is made monic instead.
        """
        if not self.terms:
            return self
        if self.field is not None:
            return self.scale(1 / self.leading_coefficient())
        den = 1
        for c in self.terms.values():
            den = lcm(den, c.denominator)
        num = 0
        for c in self.terms.values():
            num = gcd(num, (c * den).numerator)
        sign = 1 if self.leading_coefficient() > 0 else -1
        factor = Fraction(sign * den, num)
        return self.scale(factor)

    def integer_terms(self) -> dict[tuple, int]:
        """Terms of the primitive form as Python ints (rational polynomials only)."""
        if self.field is not None:
            raise TypeError("integer_terms needs rational coefficients")
        return {e: int(c) for e, c in self.primitive().terms.items()}

    def weighted_degree(self) -> tuple[bool, int | None]:
        """Return ``(is_homogeneous, degree)`` w.r.t. the ring weights."""
        if self.weights is None:
            raise ValueError("no weights configured for this polynomial")
        degs = {sum(a * b for a, b in zip(e, self.weights)) for e in self.terms}
        if len(degs) == 1:
            return True, degs.pop()
        if not degs:
            return True, None
        return False, None

    # -- evaluation and substitution -----------------------------------------

    def evaluate(self, point: Mapping[str, object]):
        """Exact value at a full assignment of the ring variables."""
        for v in self.vars:
            if v not in point and any(e[self.vars.index(v)] for e in self.terms):
                raise KeyError(f"missing value for variable {v!r}")
        vals = [point.get(v, 0) for v in self.vars]
        return _eval_terms(self.terms, vals)

    def substitute(self, partial: Mapping[str, object]) -> "MPoly":
        """Specialize some variables to scalars, staying in the same ring."""
        idx = [(self.index(v), _coerce_scalar(c)) for v, c in partial.items()]
        powcache: dict = {}
        terms: dict = {}
        field = self.field
        for _, c in idx:
            field = self._join_field(field, _field(c))
        for e, c in self.terms.items():
            e = list(e)
            coeff = c
            for i, val in idx:
                k = e[i]
                if k:
                    key = (i, k)
                    p = powcache.get(key)
                    if p is None:
                        p = powcache[key] = val ** k
                    coeff = coeff * p
                    e[i] = 0
            if not coeff:
                continue
            e = tuple(e)
            v = terms.get(e)
            terms[e] = coeff if v is None else v + coeff
        terms = {e: c for e, c in terms.items() if c}
        return self._like(terms, field)

    def compose(self, subs: Mapping[str, "MPoly"]) -> "MPoly":
        """Substitute every used variable by a polynomial from one common ring."""
        used = self.used_vars()
        missing = [v for v in used if v not in subs]
        if missing:
            raise RingMismatch(f"no substitute given for {missing}")
        targets = [subs[v] for v in used]
        if not targets:
            ring = next(iter(subs.values()), None)
            if ring is None:
                raise RingMismatch("empty substitution")
            return MPoly.constant(self.constant_value() if self.terms else 0, ring.vars, ring.weights)
        ring = targets[0]
        for t in targets[1:]:
            if t.vars != ring.vars:
                raise RingMismatch(f"substitutes live in different rings: {ring.vars} vs {t.vars}")
        weights = ring.weights
        for t in targets[1:]:
            if weights is None:
                weights = t.weights
        idx = [self.index(v) for v in used]
        pows: dict = {}

        def power(j, k):
            key = (j, k)
            p = pows.get(key)
            if p is None:
                if k == 1:
                    p = targets[j]
                elif k % 2 == 0:
                    h = power(j, k // 2)
                    p = h * h
                else:
                    p = power(j, k - 1) * targets[j]
                pows[key] = p
            return p

        result = MPoly.zero(ring.vars, weights)
        # group by the leading used variable to share partial products
        for e, c in self.terms.items():
            prod = None
            for j, i in enumerate(idx):
                k = e[i]
                if k:
                    prod = power(j, k) if prod is None else prod * power(j, k)
            if prod is None:
                result = result + c
            else:
                result = result + prod.scale(c)
        return result.with_weights(weights)

    def coefficients_in(self, var: str) -> dict[int, "MPoly"]:
        """Split as sum of ``coeff_k * var^k``; coefficients stay in this ring."""
        i = self.index(var)
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[i]
            ne = e[:i] + (0,) + e[i + 1:]
            out.setdefault(k, {})[ne] = c
        return {k: self._like(t, self.field) for k, t in sorted(out.items())}

    def univariate_coeffs(self, var: str) -> list:
        """Dense coefficient list (lowest degree first) of a polynomial in ``var`` only."""
        i = self.index(var)
        for e in self.terms:
            if any(x for j, x in enumerate(e) if j != i):
                raise ValueError(f"polynomial involves variables other than {var!r}")
        deg = self.degree(var)
        coeffs = [Fraction(0)] * (deg + 1)
        for e, c in self.terms.items():
            coeffs[e[i]] = c
        return coeffs

    def diff(self, var: str) -> "MPoly":
        i = self.index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                terms[ne] = c * e[i]
        return self._like(terms, self.field)

    # -- text and JSON --------------------------------------------------------

    def _monomial_text(self, e) -> str:
        parts = []
        for v, k in zip(self.vars, e):
            if k == 1:
                parts.append(v)
            elif k > 1:
                parts.append(f"{v}^{k}")
        return "*".join(parts)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = self._monomial_text(e)
            if isinstance(c, QuadElem) and c.b != 0:
                sign, body = "+", f"({c})"
                if c.a == 0 and c.b < 0:
                    sign, body = "-", f"({-c})"
            else:
                c = c.a if isinstance(c, QuadElem) else c
                sign = "-" if c < 0 else "+"
                body = str(abs(c))
            if mono:
                text = mono if body == "1" else f"{body}*{mono}"
            else:
                text = body
            out.append((sign, text))
        first_sign, first = out[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, text in out[1:]:
            s += f" {sign} {text}"
        return s

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"MPoly({self.vars}, {self.to_text()!r})"

    def to_json_obj(self) -> dict:
        terms = []
        for e, c in self.sorted_terms():
            terms.append({"e": list(e), "c": str(c)})
        return {
            "vars": list(self.vars),
            "weights": list(self.weights) if self.weights is not None else None,
            "field": self.field,
            "terms": terms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data) -> "MPoly":
        if isinstance(data, str):
            data = json.loads(data)
        terms = {}
        for t in data["terms"]:
            terms[tuple(t["e"])] = parse_scalar(t["c"])
        return cls(data["vars"], terms, data.get("weights"))

    @classmethod
    def parse(cls, text: str, vars: Sequence[str], weights: Sequence[int] | None = None) -> "MPoly":
        return _Parser(text, tuple(vars), weights).parse()


def _eval_terms(terms, vals):
    cache: dict = {}
    total = Fraction(0)
    for e, c in terms.items():
        term = c
        for i, k in enumerate(e):
            if k:
                key = (i, k)
                p = cache.get(key)
                if p is None:
                    p = cache[key] = vals[i] ** k
                term = term * p
        total = total + term
    if isinstance(total, QuadElem) and total.b == 0:
        return total.a
    return total


def parse_scalar(text: str):
    """Parse ``"p/q"`` or an expression like ``"1/2+3*sqrt(5)"`` into a scalar."""
    text = text.strip()
    try:
        return as_rat(text)
    except (ValueError, ZeroDivisionError):
        pass
    p = MPoly.parse(text, ())
    return p.constant_value() if p.terms else Fraction(0)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


class ParseError(ValueError):
    pass


class _Parser:
    """Recursive-descent parser for polynomial expressions with rational constants."""

    def __init__(self, text, vars, weights):
        self.vars = vars
        self.weights = tuple(weights) if weights is not None else None
        self.tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
            num, ident, op = m.groups()
            if num is not None:
                self.tokens.append(("num", int(num)))
            elif ident is not None:
                self.tokens.append(("id", ident))
            else:
                self.tokens.append(("op", "^" if op == "**" else op))
            pos = m.end()
        self.i = 0
        self.gens = dict(zip(vars, MPoly.gens(vars, self.weights)))

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, got {val!r}")

    def parse(self) -> MPoly:
        if not self.tokens:
            raise ParseError("empty expression")
        p = self.expr()
        if self.i != len(self.tokens):
            raise ParseError(f"trailing input at token {self.peek()}")
        return p

    def expr(self):
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            p = self.term()
            if val == "-":
                p = -p
        else:
            p = self.term()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                q = self.term()
                p = p + q if val == "+" else p - q
            else:
                return p

    def term(self):
        p = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                q = self.factor()
                if val == "*":
                    p = p * q
                else:
                    if not q.is_constant() or q.is_zero():
                        raise ParseError("division only by nonzero constants")
                    p = p / q.constant_value()
            elif kind in ("num", "id") or (kind == "op" and val == "("):
                p = p * self.factor()  # implicit multiplication
            else:
                return p

    def factor(self):
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                raise ParseError("negative exponents are not polynomial")
            kind, n = self.take()
            if kind != "num":
                raise ParseError("exponent must be a nonnegative integer")
            return base ** (sign * n)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return MPoly.constant(val, self.vars, self.weights)
        if kind == "id":
            if val in self.gens:
                return self.gens[val]
            if val == "sqrt":
                self.expect("(")
                k, d = self.take()
                if k != "num":
                    raise ParseError("sqrt expects an integer literal")
                self.expect(")")
                return MPoly.constant(QuadElem.sqrt(d), self.vars, self.weights)
            raise ParseError(f"unknown variable {val!r}; ring is {self.vars}")
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect(")")
            return p
        if kind == "op" and val == "-":
            return -self.factor()
        raise ParseError(f"unexpected token {val!r}")


def poly(text: str, vars: Sequence[str] | str, weights: Sequence[int] | None = None) -> MPoly:
    """Shorthand: ``poly("x^2 - y", "x y")``."""
    if isinstance(vars, str):
        vars = vars.replace(",", " ").split()
    return MPoly.parse(text, vars, weights)


def exact_divide(p: MPoly, d: MPoly) -> MPoly | None:
    """Return q with p == d*q exactly, or None if d does not divide p.

    Uses multivariate division w.r.t. the graded reverse lexicographic order;
    for a single divisor the remainder is zero iff d divides p.
    """
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    weights = p._check_ring(d)
    if p.is_zero():
        return p._like({})
    # one order for both operands, or the leading terms would disagree
    d = d.with_weights(weights)
    ld, lc = d.leading_term()
    rem = dict(p.terms)
    quot: dict = {}
    key = d.order_key
    dterms = list(d.terms.items())
    while rem:
        e = max(rem, key=key)
        if any(a < b for a, b in zip(e, ld)):
            return None
        m = tuple(a - b for a, b in zip(e, ld))
        c = rem[e] / lc
        quot[m] = c
        for de, dc in dterms:
            t = tuple(a + b for a, b in zip(de, m))
            v = rem.get(t, 0) - c * dc
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    field = MPoly._join_field(p.field, d.field)
    return MPoly._raw(p.vars, quot, p.weights or d.weights, field)
