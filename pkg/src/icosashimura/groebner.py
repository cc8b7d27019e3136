"""Buchberger's algorithm over Q with graded and block-elimination orders.

Internally a polynomial is a dict from exponent tuples to Python ints; every
intermediate result is kept primitive (content stripped) so coefficient growth
stays under control.  Pair handling follows the Gebauer-Moeller update and
pairs are processed by the normal (sugar) strategy with ties broken by the
order in which pairs were created, so runs are deterministic.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable

from .mpoly import MPoly, RingMismatch, exact_divide


# ---------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on a fixed, ordered tuple of variables.

    ``kind`` is one of ``"lex"``, ``"grevlex"``, ``"weighted-grevlex"`` or
    ``"block"``.  For ``"block"`` the variables in ``front`` are compared
    first (weighted degree, then reverse lexicographic), the remaining ones
    only break ties; this makes it an elimination order for ``front``.
    """

    kind: str
    vars: tuple[str, ...]
    weights: tuple[int, ...] | None = None
    front: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "weighted-grevlex", "block"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        object.__setattr__(self, "vars", tuple(self.vars))
        if self.weights is not None:
            w = tuple(int(x) for x in self.weights)
            if len(w) != len(self.vars) or any(x <= 0 for x in w):
                raise ValueError(f"bad weights {w} for {self.vars}")
            object.__setattr__(self, "weights", w)
        if self.kind == "weighted-grevlex" and self.weights is None:
            raise ValueError("weighted-grevlex needs weights")
        if self.kind == "block":
            front = tuple(self.front)
            bad = [v for v in front if v not in self.vars]
            if bad:
                raise ValueError(f"block variables {bad} not among {self.vars}")
            object.__setattr__(self, "front", front)

    @property
    def grading(self) -> tuple[int, ...]:
        return self.weights if self.weights is not None else (1,) * len(self.vars)

    def key_function(self):
        """Return ``e -> key`` such that a larger key means a larger monomial."""
        n = len(self.vars)
        w = self.grading
        if self.kind == "lex":
            return lambda e: e
        if self.kind in ("grevlex", "weighted-grevlex"):
            rev = tuple(range(n - 1, -1, -1))
            if all(x == 1 for x in w):
                return lambda e: (sum(e),) + tuple(-e[i] for i in rev)
            return lambda e: (sum(a * b for a, b in zip(e, w)),) + tuple(-e[i] for i in rev)
        fi = [self.vars.index(v) for v in self.vars if v in self.front]
        ri = [i for i in range(n) if self.vars[i] not in self.front]
        frev = fi[::-1]
        rrev = ri[::-1]

        def key(e):
            return ((sum(w[i] * e[i] for i in fi),) + tuple(-e[i] for i in frev)
                    + (sum(w[i] * e[i] for i in ri),) + tuple(-e[i] for i in rrev))

        return key

    def compare(self, e1: tuple, e2: tuple) -> int:
        k = self.key_function()
        a, b = k(e1), k(e2)
        return (a > b) - (a < b)

    def describe(self) -> dict:
        return {"kind": self.kind, "vars": list(self.vars),
                "weights": list(self.weights) if self.weights else None,
                "front": list(self.front)}


@dataclass
class PolyIdeal:
    generators: list[MPoly]
    order: MonomialOrder

    def __post_init__(self):
        gens = []
        for g in self.generators:
            if g.vars != self.order.vars:
                raise RingMismatch(f"generator ring {g.vars} differs from {self.order.vars}")
            if g.field is not None:
                raise TypeError("Groebner computations need rational coefficients")
            if g:
                gens.append(g)
        self.generators = gens

    @property
    def vars(self) -> tuple[str, ...]:
        return self.order.vars


@dataclass
class GBStats:
    spairs: int = 0
    zero_reductions: int = 0
    max_degree: int = 0
    reductions: int = 0
    seconds: float = 0.0
    basis_size: int = 0

    def as_dict(self) -> dict:
        return {"spairs": self.spairs, "zero_reductions": self.zero_reductions,
                "max_degree": self.max_degree, "reductions": self.reductions,
                "seconds": round(self.seconds, 3), "basis_size": self.basis_size}


@dataclass
class GroebnerBasis:
    elements: list[MPoly]
    order: MonomialOrder
    stats: GBStats = field(default_factory=GBStats)

    @property
    def vars(self):
        return self.order.vars

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def to_json_obj(self) -> dict:
        return {"order": self.order.describe(),
                "elements": [g.to_json_obj() for g in self.elements],
                "stats": self.stats.as_dict()}


class GroebnerLimitExceeded(RuntimeError):
    """Raised when a Buchberger run exceeds its S-pair or time budget."""

    def __init__(self, message: str, stats: GBStats, partial: list[MPoly]):
        super().__init__(message)
        self.stats = stats
        self.partial = partial


@dataclass
class Limits:
    max_spairs: int | None = None
    max_seconds: float | None = None


ELIMINATION_LIMITS = Limits(max_seconds=3600.0)
FIBER_LIMITS = Limits(max_seconds=10.0)


# ---------------------------------------------------------------------------
# the engine


def _content(values) -> int:
    return gcd(*values)


def _divmask(e: tuple) -> int:
    m = 0
    bit = 0
    for x in e:
        if x >= 1:
            m |= 1 << bit
        if x >= 2:
            m |= 2 << bit
        if x >= 4:
            m |= 4 << bit
        if x >= 8:
            m |= 8 << bit
        bit += 4
    return m


def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm_exp(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class _Basis:
    """Mutable state for one Buchberger run."""

    def __init__(self, order: MonomialOrder):
        self.order = order
        self._key = order.key_function()
        self.keycache: dict = {}
        self.polys: list[list] = []    # [lead, lead_coeff, tail_items, mask, sugar]
        self.active: list[int] = []
        self.divcache: dict = {}
        self.grading = order.grading
        self.reductions = 0

    def key(self, e):
        k = self.keycache.get(e)
        if k is None:
            k = self._key(e)
            self.keycache[e] = k
        return k

    def nkey(self, e):
        return tuple(-x for x in self.key(e))

    def wdeg(self, e) -> int:
        return sum(a * b for a, b in zip(e, self.grading))

    def find_divisor(self, e):
        hit = self.divcache.get(e)
        start = 0
        if hit is not None:
            idx, upto = hit
            if idx is not None:
                return idx
            start = upto
        n = len(self.polys)
        if start < n:
            m = _divmask(e)
            for i in range(start, n):
                rec = self.polys[i]
                if rec[5] and not (rec[3] & ~m) and _divides(rec[0], e):
                    self.divcache[e] = (i, n)
                    return i
            self.divcache[e] = (None, n)
        return None

    def leading(self, p: dict):
        return max(p, key=self.key)

    def reduce(self, p: dict, full: bool = True) -> dict:
        """Fraction-free reduction of ``p`` modulo the stored polynomials."""
        p = dict(p)
        if not p:
            return p
        heap = [(self.nkey(e), e) for e in p]
        heapq.heapify(heap)
        queued = set(p)
        steps = 0
        while heap:
            _, e = heapq.heappop(heap)
            queued.discard(e)
            c = p.get(e)
            if c is None:
                continue
            i = self.find_divisor(e)
            if i is None:
                if not full:
                    break
                continue
            lead, lc, tail = self.polys[i][0], self.polys[i][1], self.polys[i][2]
            g = gcd(c, lc)
            a = lc // g
            b = c // g
            if a < 0:
                a, b = -a, -b
            del p[e]
            if a != 1:
                for k in p:
                    p[k] *= a
            m = tuple(x - y for x, y in zip(e, lead))
            for te, tc in tail:
                t = tuple(x + y for x, y in zip(te, m))
                v = p.get(t)
                if v is None:
                    p[t] = -b * tc
                    if t not in queued:
                        queued.add(t)
                        heapq.heappush(heap, (self.nkey(t), t))
                else:
                    v -= b * tc
                    if v:
                        p[t] = v
                    else:
                        del p[t]
            steps += 1
            if a != 1 and steps % 8 == 0 and p:
                cont = _content(p.values())
                if cont > 1:
                    for k in p:
                        p[k] //= cont
        self.reductions += steps
        if p:
            cont = _content(p.values())
            if cont > 1:
                for k in p:
                    p[k] //= cont
        return p

    def add(self, p: dict, sugar: int) -> int:
        lead = self.leading(p)
        lc = p[lead]
        if lc < 0:
            p = {e: -c for e, c in p.items()}
            lc = -lc
        tail = sorted(((e, c) for e, c in p.items() if e != lead),
                      key=lambda t: self.key(t[0]), reverse=True)
        self.polys.append([lead, lc, tail, _divmask(lead), sugar, True])
        return len(self.polys) - 1

    def as_dict(self, i: int) -> dict:
        rec = self.polys[i]
        d = {rec[0]: rec[1]}
        d.update(rec[2])
        return d


def _to_int_dict(p: MPoly) -> dict:
    return p.integer_terms()


def _spoly(B: _Basis, i: int, j: int) -> dict:
    li, ci, ti = B.polys[i][0], B.polys[i][1], B.polys[i][2]
    lj, cj, tj = B.polys[j][0], B.polys[j][1], B.polys[j][2]
    L = _lcm_exp(li, lj)
    g = gcd(ci, cj)
    a, b = cj // g, ci // g
    mi = tuple(x - y for x, y in zip(L, li))
    mj = tuple(x - y for x, y in zip(L, lj))
    out: dict = {}
    for e, c in ti:
        t = tuple(x + y for x, y in zip(e, mi))
        out[t] = out.get(t, 0) + a * c
    for e, c in tj:
        t = tuple(x + y for x, y in zip(e, mj))
        v = out.get(t, 0) - b * c
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return {e: c for e, c in out.items() if c}


def groebner_basis(ideal: PolyIdeal, limits: Limits | None = None, full_reduce: bool = True) -> GroebnerBasis:
    """Reduced Groebner basis of ``ideal`` under ``ideal.order``."""
    limits = limits or Limits()
    order = ideal.order
    stats = GBStats()
    t0 = time.monotonic()
    B = _Basis(order)
    if not ideal.generators:
        return GroebnerBasis([], order, stats)

    pairs: dict[int, tuple] = {}
    heap: list = []
    counter = 0

    def update(h: int):
        nonlocal counter
        hl = B.polys[h][0]
        act = B.active
        cands = [(g, _lcm_exp(hl, B.polys[g][0])) for g in act]
        keep = []
        for idx, (g, L) in enumerate(cands):
            if _coprime(hl, B.polys[g][0]):
                keep.append((g, L, True))
                continue
            redundant = False
            for g2, L2 in cands[idx + 1:]:
                if _divides(L2, L):
                    redundant = True
                    break
            if not redundant:
                for g2, L2, _ in keep:
                    if _divides(L2, L):
                        redundant = True
                        break
            if not redundant:
                keep.append((g, L, False))
        # drop old pairs made redundant by h (Gebauer-Moeller criterion B)
        for pid in list(pairs):
            i, j, L = pairs[pid][:3]
            if _divides(hl, L):
                if _lcm_exp(B.polys[i][0], hl) != L and _lcm_exp(B.polys[j][0], hl) != L:
                    del pairs[pid]
        for g, L, cop in keep:
            if cop:
                continue
            si = B.polys[g][4] + B.wdeg(L) - B.wdeg(B.polys[g][0])
            sh = B.polys[h][4] + B.wdeg(L) - B.wdeg(hl)
            sugar = max(si, sh)
            pid = counter
            counter += 1
            pairs[pid] = (g, h, L)
            heapq.heappush(heap, (sugar, B.key(L), pid))
        newact = []
        for g in act:
            if _divides(hl, B.polys[g][0]):
                B.polys[g][5] = False
            else:
                newact.append(g)
        newact.append(h)
        B.active = newact

    def check_limits():
        stats.seconds = time.monotonic() - t0
        over = None
        if limits.max_spairs is not None and stats.spairs > limits.max_spairs:
            over = f"S-pair budget {limits.max_spairs} exceeded"
        elif limits.max_seconds is not None and stats.seconds > limits.max_seconds:
            over = f"time budget {limits.max_seconds}s exceeded"
        if over:
            partial = [_from_int_dict(B.as_dict(i), order) for i in B.active]
            stats.basis_size = len(partial)
            stats.reductions = B.reductions
            raise GroebnerLimitExceeded(over, stats, partial)

    gens = [_to_int_dict(g) for g in ideal.generators]
    gens.sort(key=lambda d: B.key(B.leading(d)))
    for d in gens:
        sugar = max(B.wdeg(e) for e in d)
        r = B.reduce(d, full_reduce)
        if not r:
            continue
        h = B.add(r, sugar)
        stats.max_degree = max(stats.max_degree, B.wdeg(B.polys[h][0]))
        if not any(B.polys[h][0]):
            return _unit_basis(order, stats, t0)
        update(h)

    while heap:
        sugar, _, pid = heapq.heappop(heap)
        pr = pairs.pop(pid, None)
        if pr is None:
            continue
        i, j, L = pr
        stats.spairs += 1
        stats.max_degree = max(stats.max_degree, B.wdeg(L))
        check_limits()
        s = _spoly(B, i, j)
        if not s:
            stats.zero_reductions += 1
            continue
        r = B.reduce(s, full_reduce)
        if not r:
            stats.zero_reductions += 1
            continue
        h = B.add(r, sugar)
        if not any(B.polys[h][0]):
            return _unit_basis(order, stats, t0)
        update(h)

    result = _interreduce(B)
    stats.seconds = time.monotonic() - t0
    stats.basis_size = len(result)
    stats.reductions = B.reductions
    return GroebnerBasis([_from_int_dict(d, order) for d in result], order, stats)


def _unit_basis(order, stats, t0):
    stats.seconds = time.monotonic() - t0
    stats.basis_size = 1
    one = MPoly.constant(1, order.vars, order.weights)
    return GroebnerBasis([one], order, stats)


def _interreduce(B: _Basis) -> list[dict]:
    act = list(B.active)
    leads = {g: B.polys[g][0] for g in act}
    minimal = []
    for g in act:
        if any(h != g and _divides(leads[h], leads[g]) and (leads[h] != leads[g] or h < g) for h in act):
            continue
        minimal.append(g)
    minimal.sort(key=lambda g: B.key(leads[g]))
    out = []
    for g in minimal:
        # reduce the tail against the other minimal elements only
        R = _Basis(B.order)
        R.keycache = B.keycache
        for h in minimal:
            if h != g:
                rec = B.polys[h]
                R.polys.append([rec[0], rec[1], rec[2], rec[3], rec[4], True])
        d = R.reduce(B.as_dict(g), True)
        lead = R.leading(d)
        if d[lead] < 0:
            d = {e: -c for e, c in d.items()}
        out.append(d)
    out.sort(key=lambda d: B.key(max(d, key=B.key)))
    return out


def _from_int_dict(d: dict, order: MonomialOrder) -> MPoly:
    return MPoly._raw(order.vars, {e: Fraction(c) for e, c in d.items()}, order.weights, None)


# ---------------------------------------------------------------------------
# public helpers


def _check_rational(p: MPoly):
    if p.field is not None:
        raise TypeError("Groebner computations need rational coefficients")


def normal_form(p: MPoly, basis: GroebnerBasis) -> MPoly:
    """Remainder of ``p`` on division by ``basis`` (zero iff p is in the ideal).

    The result is returned up to a nonzero rational factor: it is the primitive
    remainder scaled back so that ``p - nf`` lies in the ideal.
    """
    if p.vars != basis.order.vars:
        raise RingMismatch(f"polynomial ring {p.vars} differs from basis ring {basis.order.vars}")
    _check_rational(p)
    if not p:
        return p
    B = _Basis(basis.order)
    for g in basis.elements:
        B.add(g.integer_terms(), 0)
    return _nf_rational(p, B, basis.order)


def _nf_rational(p: MPoly, B: _Basis, order: MonomialOrder) -> MPoly:
    # exact division over Q so the remainder is canonical, not just up to scale
    rem: dict = {}
    work = dict(p.terms)
    key = B.key
    while work:
        e = max(work, key=key)
        c = work.pop(e)
        i = B.find_divisor(e)
        if i is None:
            rem[e] = c
            continue
        lead, lc, tail = B.polys[i][0], B.polys[i][1], B.polys[i][2]
        f = c / lc
        m = tuple(x - y for x, y in zip(e, lead))
        for te, tc in tail:
            t = tuple(x + y for x, y in zip(te, m))
            v = work.get(t, 0) - f * tc
            if v:
                work[t] = v
            else:
                work.pop(t, None)
    return MPoly._raw(order.vars, rem, p.weights or order.weights, None)


def contains(basis: GroebnerBasis, p: MPoly) -> bool:
    return normal_form(p, basis).is_zero()


def eliminate(ideal: PolyIdeal, drop_vars: Iterable[str], limits: Limits | None = None) -> tuple[list[MPoly], GroebnerBasis]:
    """Generators of the elimination ideal in the variables not in ``drop_vars``.

    Returns ``(generators, full_basis)``; generators are content-normalized and
    still live in the ambient ring of ``ideal``.
    """
    drop = tuple(drop_vars)
    bad = [v for v in drop if v not in ideal.vars]
    if bad:
        raise ValueError(f"cannot eliminate {bad}: not in {ideal.vars}")
    order = MonomialOrder("block", ideal.vars, ideal.order.weights, front=drop)
    gens = [g.with_weights(order.weights) for g in ideal.generators]
    gb = groebner_basis(PolyIdeal(gens, order), limits)
    idx = [ideal.vars.index(v) for v in drop]
    kept = [g for g in gb.elements if not any(e[i] for e in g.terms for i in idx)]
    return [g.primitive() for g in kept], gb


def is_consistent(ideal: PolyIdeal, limits: Limits | None = None) -> bool:
    """True iff 1 is not in the ideal (the variety over the algebraic closure is nonempty)."""
    try:
        gb = groebner_basis(ideal, limits or FIBER_LIMITS)
    except GroebnerLimitExceeded as exc:
        raise IndeterminateResult(str(exc), exc.stats) from exc
    return not gb.is_unit()


class IndeterminateResult(RuntimeError):
    def __init__(self, message: str, stats: GBStats | None = None):
        super().__init__(message)
        self.stats = stats


def divides_exactly(d: MPoly, p: MPoly) -> MPoly | None:
    """Quotient ``q`` with ``p == d*q`` exactly, or None."""
    return exact_divide(p, d)


def spoly_residues(basis: GroebnerBasis, max_pairs: int | None = None) -> list[MPoly]:
    """Normal forms of the S-polynomials of basis pairs (all zero for a Groebner basis)."""
    B = _Basis(basis.order)
    for g in basis.elements:
        B.add(g.integer_terms(), 0)
    out = []
    n = len(B.polys)
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            if max_pairs is not None and count >= max_pairs:
                return out
            count += 1
            s = _spoly(B, i, j)
            s_poly = _from_int_dict(s, basis.order) if s else MPoly.zero(basis.order.vars, basis.order.weights)
            out.append(_nf_rational(s_poly, B, basis.order))
    return out
