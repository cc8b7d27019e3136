"""Curves in P(1:3:5), the elimination pipelines that produce them, point
samplers, Kummer specializations and the figure export.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import mpmath

from .groebner import (
    FIBER_LIMITS, ELIMINATION_LIMITS, GroebnerLimitExceeded, IndeterminateResult, Limits,
    MonomialOrder, PolyIdeal, eliminate, is_consistent,
)
from .moduli import ICOSA_VARS, ICOSA_WEIGHTS, ICOSA_WEIGHTS_EVEN, WPoint, get_map, klein_locus_polynomial
from .mpoly import MPoly, exact_divide, poly
from .qfield import as_rat
from .ratfun import UPoly

CURVE_TEXTS = {
    "R1": "A^5 - 5*A^2*B + C",
    "R2": "3125*A^5 - 3375*A^2*B + 243*C",
    "L1": (
        "38400000000000*A^9*B^2 + 120528000000000*A^6*B^3 - 4100625000000*A^3*B^4"
        " - 184528125000000*B^5 + 2560000000000*A^10*C + 6998400000000*A^7*B*C"
        " + 34698942000000*A^4*B^2*C + 42539883750000*A*B^3*C + 2576431800000*A^5*C^2"
        " + 2714325066000*A^2*B*C^2 + 146211169851*C^3"
    ),
    "R3": (
        "1048576*A^10 - 30965760*A^7*B - 144633600*A^4*B^2 - 157464000*A*B^3"
        " + 72721152*A^5*C - 27293760*A^2*B*C - 59049*C^2"
    ),
    "R4": (
        "30517578125*A^15 + 911865234375*A^12*B + 42529296875*A^9*B^2 - 97897974609375*A^6*B^3"
        " + 424490000000000*A^3*B^4 - 345600000000000*B^5 + 2383486328125*A^10*C"
        " + 32875975781250*A^7*B*C - 147816767984375*A^4*B^2*C + 228155760000000*A*B^3*C"
        " + 19189204671875*A^5*C^2 - 29675018141125*A^2*B*C^2 + 344730881243*C^3"
    ),
    "L2": (
        "-64000000000000000000*A^12*B^6 + 370000000000000000000*A^9*B^7"
        " + 815234375000000000000*A^6*B^8 - 3902343750000000000000*A^3*B^9"
        " - 7119140625000000000000*B^10 + 38400000000000000000*A^13*B^4*C"
        " - 223920000000000000000*A^10*B^5*C - 1075967500000000000000*A^7*B^6*C"
        " + 3969323437500000000000*A^4*B^7*C + 4702429687500000000000*A*B^8*C"
        " - 7680000000000000000*A^14*B^2*C^2 + 45577600000000000000*A^11*B^3*C^2"
        " + 449730698000000000000*A^8*B^4*C^2 - 1463038602500000000000*A^5*B^5*C^2"
        " - 1122863301562500000000*A^2*B^6*C^2 + 512000000000000000*A^15*C^3"
        " - 3077760000000000000*A^12*B*C^3 - 77561010400000000000*A^9*B^2*C^3"
        " + 235959322740000000000*A^6*B^3*C^3 + 121351323118750000000*A^3*B^4*C^3"
        " + 13523702118750000000*B^5*C^3 + 4779900760000000000*A^10*C^4"
        " - 13908191752800000000*A^7*B*C^4 - 8326918293212000000*A^4*B^2*C^4"
        " - 2530877087227500000*A*B^3*C^4 + 449415539646800000*A^5*C^5"
        " + 103922033314060000*A^2*B*C^5 + 50787635527751*C^6"
    ),
}

# which Shimura curve each component carries (None: not a Shimura curve)
SHIMURA_LABEL = {"R1": 10, "R2": 6, "R3": 15, "R4": 14, "L1": None, "L2": None,
                 "MonoGene": None, "icosa": None}

PAIR_COMPONENTS = {
    (5, 8): ("R1", "R2", "L1"),
    (5, 12): ("R2", "R3", "R4", "L2"),
    (5, 21): ("R4",),
}

CURVE_NAMES = ("R1", "R2", "R3", "R4", "L1", "L2", "MonoGene", "icosa")


@dataclass(frozen=True)
class CurveSpec:
    name: str
    poly: MPoly
    role: str

    @property
    def shimura(self) -> int | None:
        return SHIMURA_LABEL.get(self.name)

    def degree(self) -> int:
        homog, deg = self.poly.weighted_degree()
        return deg

    def to_json_obj(self) -> dict:
        return {"name": self.name, "role": self.role, "degree": self.degree(),
                "shimura_discriminant": self.shimura, "polynomial": self.poly.to_json_obj()}


def _role(name: str) -> str:
    pairs = [f"({a},{b})" for (a, b), comps in PAIR_COMPONENTS.items() if name in comps]
    label = SHIMURA_LABEL.get(name)
    what = f"Shimura curve of discriminant {label}" if label else "non-Shimura component"
    if name == "MonoGene":
        return "generator of the (5,8) elimination ideal, R1*R2*L1"
    if name == "icosa":
        return "Klein's icosahedral relation"
    return f"{what}; component of the {' and '.join(pairs)} eliminant"


def _make_curve(name: str, p: MPoly) -> CurveSpec:
    homog, _ = p.weighted_degree()
    if not homog:
        raise ValueError(f"curve {name} is not weighted-homogeneous; transcription error?")
    return CurveSpec(name, p.primitive(), _role(name))


@lru_cache(maxsize=None)
def curve(name: str) -> CurveSpec:
    if name in CURVE_TEXTS:
        return _make_curve(name, poly(CURVE_TEXTS[name], ICOSA_VARS, ICOSA_WEIGHTS))
    if name == "MonoGene":
        return _make_curve(name, curve("R1").poly * curve("R2").poly * curve("L1").poly)
    if name == "icosa":
        return _make_curve(name, klein_locus_polynomial())
    raise KeyError(f"unknown curve {name!r}; known: {', '.join(CURVE_NAMES)}")


def catalog() -> list[CurveSpec]:
    return [curve(n) for n in CURVE_NAMES]


def _as_curve(c) -> CurveSpec:
    return curve(c) if isinstance(c, str) else c


# ---------------------------------------------------------------------------
# point-level checks


def curve_residual(c: CurveSpec | str, p) -> Fraction:
    """Exact value at a WPoint of P(1:3:5) or at an affine pair (X, Y) = (B, C) with A = 1."""
    c = _as_curve(c)
    if isinstance(p, WPoint):
        if p.weights != ICOSA_WEIGHTS:
            raise ValueError(f"expected a point of P(1:3:5), got weights {p.weights}")
        coords = p.coords
    else:
        X, Y = p
        coords = (Fraction(1), as_rat(X), as_rat(Y))
    return c.poly.evaluate(dict(zip(ICOSA_VARS, coords)))


CUSP = WPoint((1, 0, 0), ICOSA_WEIGHTS)


def passes_cusp(c: CurveSpec | str) -> bool:
    return curve_residual(c, CUSP) == 0


def _to_upoly(p: MPoly, var: str) -> UPoly:
    coeffs = p.univariate_coeffs(var)
    return UPoly(coeffs, var)


def _squarefree(f: UPoly) -> UPoly:
    df = UPoly([k * c for k, c in enumerate(f.coeffs)][1:], f.var)
    if not df:
        return f.monic()
    g = f.gcd(df)
    return f.divmod(g)[0].monic()


def rational_roots(f: UPoly, dps: int = 60) -> tuple[list[tuple[Fraction, int]], UPoly]:
    """Rational roots of ``f`` with multiplicities, plus the cofactor without rational roots.

    Candidates come from floating roots of the squarefree part and are
    confirmed by exact evaluation, so every returned root is exact.
    """
    if not f:
        raise ValueError("the zero polynomial has every number as a root")
    roots: list[tuple[Fraction, int]] = []
    rem = f
    sf = _squarefree(f)
    if sf.degree() >= 1:
        den = math.lcm(*(Fraction(c).denominator for c in sf.coeffs))
        ints = [int(c * den) for c in sf.coeffs]
        max_den = max(1, abs(ints[-1]))
        with mpmath.workdps(dps):
            approx = mpmath.polyroots(list(reversed(ints)), maxsteps=400, extraprec=4 * dps)
            cands = []
            for z in approx:
                if abs(mpmath.im(z)) > mpmath.mpf(10) ** (-dps // 3) * (1 + abs(z)):
                    continue
                x = mpmath.re(z)
                man, exp = x.man_exp    # mantissa comes back unsigned
                val = Fraction(man) * Fraction(2) ** exp * (-1 if x < 0 else 1)
                cands.append(val.limit_denominator(max_den))
        for r in sorted(set(cands)):
            if sf(r) != 0:
                continue
            lin = UPoly([-r, 1], f.var)
            mult = 0
            while True:
                q, m = rem.divmod(lin)
                if m:
                    break
                rem, mult = q, mult + 1
            roots.append((r, mult))
    return roots, rem


@dataclass
class SliceRoots:
    roots: list[tuple[Fraction, int]]
    remainder: UPoly
    identically_zero: bool = False

    def root_set(self) -> dict[Fraction, int]:
        return dict(self.roots)


def c_zero_sections(c: CurveSpec | str) -> SliceRoots:
    """Roots t of c(1, t, 0): where the curve meets the divisor C = 0 (t = B/A^3)."""
    c = _as_curve(c)
    f = _to_upoly(c.poly.substitute({"A": 1, "C": 0}), "B")
    if not f:
        return SliceRoots([], f, identically_zero=True)
    roots, rem = rational_roots(UPoly(f.coeffs, "t"))
    return SliceRoots(roots, rem)


def _solve_rational_C(c: CurveSpec, B: Fraction) -> list[Fraction]:
    f = _to_upoly(c.poly.substitute({"A": 1, "B": B}), "C")
    if not f or f.degree() < 1:
        return []
    return [r for r, _ in rational_roots(f)[0]]


def _small_rationals(bound: int):
    for h in range(1, 2 * bound + 1):
        for den in range(1, bound + 1):
            num_abs = h - den
            if num_abs < 0 or num_abs > bound:
                continue
            for num in ((num_abs, -num_abs) if num_abs else (0,)):
                if math.gcd(num, den) == 1:
                    yield Fraction(num, den)


def sample_rational_points(c: CurveSpec | str, n: int, seed: int = 0, bound: int = 30,
                           avoid: Sequence[MPoly] = ()) -> list[WPoint]:
    """Up to ``n`` exact points (1 : B : C) of the curve.

    Curves linear in C get a random rational B and the exact C.  Otherwise B
    runs over rationals of height <= bound in a seeded order and C is kept
    when c(1, B, C) has a rational root; the list may come back short.
    Points where any polynomial in ``avoid`` vanishes are skipped.
    """
    c = _as_curve(c)
    rng = random.Random(seed)
    deg_c = max((e[2] for e in c.poly.terms), default=0)
    out: list[WPoint] = []

    def keep(B, C) -> bool:
        return all(a.evaluate({"A": 1, "B": B, "C": C}) != 0 for a in avoid)

    if deg_c == 1:
        seen = set()
        while len(out) < n and len(seen) < (2 * bound + 1) * bound:
            B = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
            if B in seen:
                continue
            seen.add(B)
            for C in _solve_rational_C(c, B):
                if keep(B, C):
                    out.append(WPoint((1, B, C), ICOSA_WEIGHTS))
        return out[:n]
    cands = list(_small_rationals(bound))
    rng.shuffle(cands)
    for B in cands:
        for C in _solve_rational_C(c, B):
            if keep(B, C):
                out.append(WPoint((1, B, C), ICOSA_WEIGHTS))
                if len(out) >= n:
                    return out
    return out


@dataclass(frozen=True)
class NumericPoint:
    B: mpmath.mpf
    C: mpmath.mpf
    residual: mpmath.mpf
    prec: int

    def as_floats(self) -> tuple[float, float]:
        return float(self.B), float(self.C)


def numeric_points(c: CurveSpec | str, n: int, seed: int = 0, prec: int = 256) -> list[NumericPoint]:
    """Points (1 : B : C) with rational B and C a real root found at ``prec`` bits.

    The residual is |c(1, B, C)| divided by the sum of the absolute values of
    the terms, so it measures cancellation rather than scale.
    """
    c = _as_curve(c)
    rng = random.Random(seed)
    out: list[NumericPoint] = []
    with mpmath.workprec(prec):
        tries = 0
        while len(out) < n and tries < 50 * n:
            tries += 1
            B = Fraction(rng.randint(-40, 40), rng.randint(1, 20))
            f = _to_upoly(c.poly.substitute({"A": 1, "B": B}), "C")
            if f.degree() < 1:
                continue
            coeffs = [mpmath.mpf(x.numerator) / x.denominator for x in reversed(f.coeffs)]
            try:
                roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=prec)
            except mpmath.libmp.NoConvergence:
                continue
            Bm = mpmath.mpf(B.numerator) / B.denominator
            for z in roots:
                if abs(mpmath.im(z)) > mpmath.mpf(2) ** (-prec // 2):
                    continue
                C = mpmath.re(z)
                vals = [mpmath.mpf(cf.numerator) / cf.denominator * Bm ** e[1] * C ** e[2]
                        for e, cf in c.poly.terms.items()]
                res = abs(mpmath.fsum(vals)) / max(mpmath.fsum(abs(v) for v in vals), mpmath.mpf(1))
                out.append(NumericPoint(Bm, C, res, prec))
                break
    return out[:n]


def numeric_residual(p: MPoly, B, C, prec: int = 256):
    """Relative residual of a polynomial in A, B, C at (1 : B : C) in floating arithmetic."""
    with mpmath.workprec(prec):
        vals = [mpmath.mpf(cf.numerator) / cf.denominator * mpmath.mpf(B) ** e[1] * mpmath.mpf(C) ** e[2]
                for e, cf in p.terms.items()]
        return abs(mpmath.fsum(vals)) / max(mpmath.fsum(abs(v) for v in vals), mpmath.mpf(1))


# ---------------------------------------------------------------------------
# elimination systems


CHI_FOR_PAIR = {8: "chi8", 12: "chi12", 21: "chi21"}
ICOSA_WEIGHTS_FOR_PAIR = {8: ICOSA_WEIGHTS, 12: ICOSA_WEIGHTS_EVEN, 21: ICOSA_WEIGHTS_EVEN}
TRANSITIVE_FACTOR_21 = "q1^3 - q1*s1 - r1*s1"


def _pair_delta(pair) -> int:
    if isinstance(pair, str):
        pair = tuple(int(x) for x in pair.split(","))
    if len(pair) != 2 or pair[0] != 5 or pair[1] not in CHI_FOR_PAIR:
        raise ValueError(f"unsupported pair {pair}; use (5,8), (5,12) or (5,21)")
    return pair[1]


def f_system(pair) -> tuple[list[MPoly], MonomialOrder]:
    """F_k = (component k of Psi5) - (component k of chi_Delta) in A, B, C and the chi parameters."""
    delta = _pair_delta(pair)
    chi = get_map(CHI_FOR_PAIR[delta])
    psi = get_map("psi5")
    vars_ = ICOSA_VARS + chi.source_vars
    weights = ICOSA_WEIGHTS_FOR_PAIR[delta] + chi.source_weights
    gens = [a.to_ring(vars_, weights) - b.to_ring(vars_, weights)
            for a, b in zip(psi.components, chi.components)]
    return gens, MonomialOrder("weighted-grevlex", vars_, weights)


def fiber_ideal(pair, point: WPoint) -> PolyIdeal:
    """The F-system with (A, B, C) fixed to an exact point: an ideal in the chi parameters."""
    delta = _pair_delta(pair)
    if point.weights != ICOSA_WEIGHTS:
        raise ValueError("fiber systems take points of P(1:3:5)")
    chi = get_map(CHI_FOR_PAIR[delta])
    psi = get_map("psi5")
    pt = dict(zip(ICOSA_VARS, point.coords))
    vals = [c.evaluate(pt) for c in psi.components]
    gens = [MPoly.constant(v, chi.source_vars, chi.source_weights) - c
            for c, v in zip(chi.components, vals)]
    return PolyIdeal(gens, MonomialOrder("grevlex", chi.source_vars, chi.source_weights))


def fiber_consistency(pair, point: WPoint, limits: Limits | None = None) -> bool:
    """True iff Psi5(point) = chi_Delta(params) has a solution over the algebraic closure.

    Raises IndeterminateResult when the Groebner budget runs out.
    """
    return is_consistent(fiber_ideal(pair, point), limits or FIBER_LIMITS)


def random_off_locus_points(locus: MPoly, n: int, seed: int = 0, bound: int = 9) -> list[WPoint]:
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        p = WPoint((1, Fraction(rng.randint(-bound, bound), rng.randint(1, bound)),
                    Fraction(rng.randint(-bound, bound), rng.randint(1, bound))), ICOSA_WEIGHTS)
        if curve_residual(CurveSpec("locus", locus, ""), p) != 0:
            out.append(p)
    return out


# ---------------------------------------------------------------------------
# reproduction pipelines


GENERSQ_TEXT = (
    "q1*(2*q1 + r1)*s1^2*(q1^3 - q1*s1 - r1*s1)"
    "*(2*q1^4 + q1^3*r1 - 11*q1^2*s1 - 22*q1*r1*s1 - 8*r1^2*s1 + 9*s1^2)"
    "*(2*q1^4 - 27*q1^2*s1 - 27*q1*r1*s1 + 81*s1^2)"
    "*(q1^6 - 20*q1^4*s1 - 9*q1^3*r1*s1 + 98*q1^2*s1^2 + 62*q1*r1*s1^2 + 8*r1^2*s1^2 + 9*s1^3)"
)

PIPELINES = ("5,8", "5,12", "21-workaround")


@dataclass
class ComponentVerdict:
    name: str
    multiplicity: int | None = None
    cusp_pass: bool | None = None
    c0_roots: list[str] = field(default_factory=list)
    membership: str = "not-run"
    shimura: int | None = None

    def to_json_obj(self) -> dict:
        return {"name": self.name, "multiplicity": self.multiplicity, "cusp_pass": self.cusp_pass,
                "c0_roots": self.c0_roots, "membership": self.membership,
                "shimura_discriminant": self.shimura}


@dataclass
class IdentificationReport:
    pipeline: str
    status: str = "indeterminate"          # pass | fail | indeterminate
    method: str = "full"                   # full | sample
    checks: dict[str, bool | None] = field(default_factory=dict)
    components: list[ComponentVerdict] = field(default_factory=list)
    generators: list[MPoly] = field(default_factory=list)
    stats: dict[str, dict] = field(default_factory=dict)
    seconds: float = 0.0
    notes: list[str] = field(default_factory=list)

    def finish(self):
        vals = list(self.checks.values())
        if any(v is False for v in vals):
            self.status = "fail"
        elif vals and all(v is True for v in vals):
            self.status = "pass"
        else:
            self.status = "indeterminate"
        return self

    def to_json_obj(self, with_generators: bool = False) -> dict:
        d = {"pipeline": self.pipeline, "status": self.status, "method": self.method,
             "checks": self.checks, "components": [c.to_json_obj() for c in self.components],
             "generator_count": len(self.generators),
             "generator_degrees": [g.weighted_degree()[1] for g in self.generators],
             "stats": self.stats, "seconds": round(self.seconds, 3), "notes": self.notes}
        if with_generators:
            d["generators"] = [g.to_json_obj() for g in self.generators]
        return d


def _component_verdict(name: str) -> ComponentVerdict:
    sl = c_zero_sections(name)
    return ComponentVerdict(name, cusp_pass=passes_cusp(name),
                            c0_roots=[f"{r}" + (f"^{m}" if m > 1 else "") for r, m in sl.roots],
                            shimura=SHIMURA_LABEL.get(name))


def factor_out(p: MPoly, factors: Sequence[tuple[str, MPoly]]) -> tuple[dict[str, int], MPoly]:
    """Divide ``p`` by each named factor as often as possible; returns exponents and cofactor."""
    mult = {}
    rest = p
    for name, f in factors:
        k = 0
        while True:
            q = exact_divide(rest, f.to_ring(rest.vars, rest.weights))
            if q is None:
                break
            rest, k = q, k + 1
        mult[name] = k
    return mult, rest


def _eliminant_icosa(g: MPoly) -> MPoly:
    """An eliminant in A, B, C re-graded to weights (1, 3, 5)."""
    return g.to_ring(ICOSA_VARS, ICOSA_WEIGHTS)


def reproduce_pair(delta: int, limits: Limits | None = None) -> IdentificationReport:
    """Eliminate the chi parameters from the (5, delta) system and factor the result."""
    limits = limits or ELIMINATION_LIMITS
    rep = IdentificationReport(f"5,{delta}")
    t0 = time.perf_counter()
    gens, order = f_system((5, delta))
    chi = get_map(CHI_FOR_PAIR[delta])
    names = PAIR_COMPONENTS[(5, delta)]
    rep.components = [_component_verdict(n) for n in names]
    try:
        elim, gb = eliminate(PolyIdeal(gens, order), chi.source_vars, limits)
    except GroebnerLimitExceeded as exc:
        rep.stats["elimination"] = exc.stats.as_dict()
        rep.notes.append(f"elimination stopped: {exc}")
        rep.checks["eliminant computed"] = None
        rep.seconds = time.perf_counter() - t0
        return rep.finish()
    rep.stats["elimination"] = gb.stats.as_dict()
    elim = [_eliminant_icosa(g) for g in elim]
    rep.generators = elim
    rep.checks["principal"] = len(elim) == 1
    factors = [(n, curve(n).poly) for n in names]
    all_exact = True
    for g in elim:
        mult, rest = factor_out(g, factors)
        exact = rest.is_constant()
        all_exact = all_exact and exact
        for cv in rep.components:
            cv.multiplicity = max(cv.multiplicity or 0, mult[cv.name])
        if not exact:
            rep.notes.append(f"cofactor of weighted degree {rest.weighted_degree()[1]} left after division")
    rep.checks["every component divides the eliminant"] = all(
        (cv.multiplicity or 0) >= 1 for cv in rep.components)
    rep.checks["eliminant is a product of the components"] = all_exact
    if delta == 8 and len(elim) == 1:
        rep.checks["generator equals R1*R2*L1"] = elim[0] == curve("MonoGene").poly
    rep.seconds = time.perf_counter() - t0
    return rep.finish()


def reproduce_21_workaround(limits: Limits | None = None, samples: int = 5, seed: int = 0) -> IdentificationReport:
    """Eliminate A, B, C from the (5,21) system, then add the transitive factor and eliminate the parameters."""
    limits = limits or ELIMINATION_LIMITS
    rep = IdentificationReport("21-workaround")
    t0 = time.perf_counter()
    gens, order = f_system((5, 21))
    chi = get_map("chi21")
    rep.components = [_component_verdict("R4")]
    try:
        elim_t, gb_t = eliminate(PolyIdeal(gens, order), ICOSA_VARS, limits)
        rep.stats["parameter side"] = gb_t.stats.as_dict()
        target = poly(GENERSQ_TEXT, chi.source_vars, chi.source_weights).primitive()
        elim_t = [g.to_ring(chi.source_vars, chi.source_weights) for g in elim_t]
        rep.checks["parameter-side ideal is principal"] = len(elim_t) == 1
        rep.checks["parameter-side generator matches the displayed product"] = (
            len(elim_t) == 1 and elim_t[0] == target)
    except GroebnerLimitExceeded as exc:
        rep.stats["parameter side"] = exc.stats.as_dict()
        rep.checks["parameter-side generator matches the displayed product"] = None
        rep.notes.append(f"parameter-side elimination stopped: {exc}")
    extra = poly(TRANSITIVE_FACTOR_21, order.vars, order.weights)
    try:
        elim_s, gb_s = eliminate(PolyIdeal(gens + [extra], order), chi.source_vars, limits)
    except GroebnerLimitExceeded as exc:
        rep.stats["icosahedral side"] = exc.stats.as_dict()
        rep.checks["R4 divides every generator"] = None
        rep.notes.append(f"icosahedral-side elimination stopped: {exc}")
        rep.seconds = time.perf_counter() - t0
        return rep.finish()
    rep.stats["icosahedral side"] = gb_s.stats.as_dict()
    elim_s = [_eliminant_icosa(g) for g in elim_s]
    rep.generators = elim_s
    r4 = curve("R4").poly
    divisible = [exact_divide(g, r4) is not None for g in elim_s]
    rep.checks["icosahedral-side basis is nonempty"] = bool(elim_s)
    if all(divisible):
        rep.checks["R4 divides every generator"] = True
        rep.components[0].multiplicity = 1
        rep.components[0].membership = "exact division"
    else:
        # numeric fallback: R4 points must still be zeros of every generator
        pts = numeric_points("R4", samples, seed)
        worst = max((numeric_residual(g, p.B, p.C) for g in elim_s for p in pts), default=None)
        ok = len(pts) >= samples and worst is not None and worst < mpmath.mpf("1e-10")
        rep.checks["R4 divides every generator"] = None
        rep.checks["R4 numeric points satisfy every generator"] = ok
        rep.components[0].membership = f"numeric, worst residual {mpmath.nstr(worst, 5) if worst is not None else 'n/a'}"
        rep.notes.append("exact division by R4 failed for some generator; numeric sampling used")
    rep.seconds = time.perf_counter() - t0
    return rep.finish()


def reproduce(which: str, limits: Limits | None = None) -> IdentificationReport:
    """Run one pipeline: '5,8', '5,12' or '21-workaround'."""
    if which == "5,8":
        return reproduce_pair(8, limits)
    if which == "5,12":
        return reproduce_pair(12, limits)
    if which == "21-workaround":
        return reproduce_21_workaround(limits)
    raise ValueError(f"unknown pipeline {which!r}; known: {', '.join(PIPELINES)}")


def sample_pair(delta: int, points_per_curve: int = 3, off_locus: int = 3, seed: int = 0,
                limits: Limits | None = None, names: Sequence[str] | None = None) -> IdentificationReport:
    """Fiber checks instead of a full elimination.

    Points on each component must give consistent fibers and random points
    off the union must not.  Components without enough exact points found by
    the sampler get a numeric verdict.  Points shared with another component
    are skipped: the projection of the fiber variety is only constructible, so
    a fiber can be empty at a point of its closure.  ``names`` restricts the
    per-component checks; the off-locus test always uses the full union.
    """
    rep = IdentificationReport(f"5,{delta}", method="sample")
    t0 = time.perf_counter()
    every = PAIR_COMPONENTS[(5, delta)]
    names = tuple(names) if names is not None else every
    unknown = [n for n in names if n not in every]
    if unknown:
        raise ValueError(f"{unknown} are not components for (5,{delta})")
    union = MPoly.constant(1, ICOSA_VARS, ICOSA_WEIGHTS)
    for n in every:
        union = union * curve(n).poly
    for n in names:
        cv = _component_verdict(n)
        others = [curve(o).poly for o in every if o != n]
        pts = sample_rational_points(n, points_per_curve, seed, avoid=others)
        verdicts = []
        for p in pts:
            try:
                verdicts.append(fiber_consistency((5, delta), p, limits))
            except IndeterminateResult:
                verdicts.append(None)
        if len(pts) >= points_per_curve:
            cv.membership = f"exact points {sum(v is True for v in verdicts)}/{len(pts)} consistent"
            rep.checks[f"{n} fibers consistent"] = (all(v is True for v in verdicts)
                                                    if None not in verdicts else None)
        else:
            npts = numeric_points(n, points_per_curve, seed)
            worst = max((p.residual for p in npts), default=None)
            cv.membership = (f"numeric: {len(npts)} points at 256 bits, worst residual "
                             f"{mpmath.nstr(worst, 5) if worst is not None else 'n/a'}")
            rep.checks[f"{n} numeric points on curve"] = (
                len(npts) >= points_per_curve and worst < mpmath.mpf("1e-20"))
            if pts:
                rep.checks[f"{n} exact-point fibers consistent"] = all(v is True for v in verdicts)
        rep.components.append(cv)
    off = random_off_locus_points(union, off_locus, seed + 1)
    offv = []
    for p in off:
        try:
            offv.append(fiber_consistency((5, delta), p, limits))
        except IndeterminateResult:
            offv.append(None)
    rep.checks["off-locus fibers inconsistent"] = (all(v is False for v in offv)
                                                   if None not in offv else None)
    rep.seconds = time.perf_counter() - t0
    return rep.finish()


# ---------------------------------------------------------------------------
# Kummer specializations and covering-curve constraints


KUMMER_VARS = ("u", "v", "t", "A", "B", "C")
KUMMER_TEXT = "v^2 - (u^2 - 2*t^5)*(u - (5*A*t^2 - 10*B*t + C))"

KUMMER_DISPLAYS = {
    6: "v^2 - (u^2 - 2*t^5)*(u - (5*A*t^2 - 10*B*t - 1/243*(3125*A^5 - 3375*A^2*B)))",
    10: "v^2 - (u^2 - 2*t^5)*(u - (5*A*t^2 - 10*B*t - (A^5 - 5*A^2*B)))",
}

KUMMER_CURVE = {6: "R2", 10: "R1"}


def kummer_polynomial() -> MPoly:
    return poly(KUMMER_TEXT, KUMMER_VARS)


def solve_linear_C(c: CurveSpec | str) -> MPoly:
    """C as a polynomial in A, B for a curve of the form a*C + (terms without C)."""
    c = _as_curve(c)
    parts = c.poly.coefficients_in("C")
    if set(parts) != {0, 1} or not parts[1].is_constant():
        raise ValueError(f"{c.name} is not linear in C with constant leading coefficient")
    lead = parts[1].evaluate({v: 0 for v in ICOSA_VARS})
    return (-parts[0]).scale(1 / lead)


def kummer_specialize(D: int) -> MPoly:
    """The Kummer family restricted to the Shimura curve of discriminant 6 or 10."""
    if D not in KUMMER_CURVE:
        raise ValueError("Kummer specializations exist for D = 6 and D = 10")
    csol = solve_linear_C(KUMMER_CURVE[D]).to_ring(KUMMER_VARS)
    k = kummer_polynomial()
    subs = {v: MPoly.gens(KUMMER_VARS)[i] for i, v in enumerate(KUMMER_VARS)}
    subs["C"] = csol
    return k.compose(subs)


def kummer_display(D: int) -> MPoly:
    return poly(KUMMER_DISPLAYS[D], KUMMER_VARS)


HM_TEXTS = {
    6: "4*s^2*t^2 - s^2 + t^2 + 2",
    10: "s^2 - t*(t - 2)*(2*t + 1)",
}


def hm_constraint(D: int) -> MPoly:
    if D not in HM_TEXTS:
        raise ValueError("covering-curve constraints exist for D = 6 and D = 10")
    return poly(HM_TEXTS[D], ("s", "t"))


def hm_constraint_residual(D: int, s, t) -> Fraction:
    return hm_constraint(D).evaluate({"s": as_rat(s), "t": as_rat(t)})


# ---------------------------------------------------------------------------
# figure export: R1, R2 and the icosahedral locus in the (X, Y) chart


DEFAULT_WINDOW = (-0.5, 1.5, -3.0, 6.0)


def _affine(c: CurveSpec | str) -> MPoly:
    return _as_curve(c).poly.substitute({"A": 1})


def figure5_lines(window=DEFAULT_WINDOW, samples: int = 201) -> dict[str, list[tuple[float, float, float]]]:
    """R1 and R2 as (X, Y, residual) samples; both are graphs Y = f(X) in the chart."""
    x0, x1, y0, y1 = window
    out = {}
    for name in ("R1", "R2"):
        ysol = solve_linear_C(name)
        aff = _affine(name)
        pts = []
        for k in range(samples):
            X = x0 + (x1 - x0) * k / (samples - 1)
            Y = float(ysol.evaluate({"A": Fraction(1), "B": Fraction(X)}))
            if y0 <= Y <= y1:
                pts.append((X, Y, float(aff.evaluate({"B": Fraction(X), "C": Fraction(Y)}))))
        out[name] = pts
    return out


def figure5_contour(window=DEFAULT_WINDOW, grid: int = 200) -> list[tuple[tuple[float, float], tuple[float, float]]]:
    """Zero set of the icosahedral relation by marching squares on a grid."""
    x0, x1, y0, y1 = window
    f = _affine("icosa")
    xs = [x0 + (x1 - x0) * i / grid for i in range(grid + 1)]
    ys = [y0 + (y1 - y0) * j / grid for j in range(grid + 1)]
    terms = [(float(c), e[1], e[2]) for e, c in f.terms.items()]

    def val(x, y):
        return math.fsum(c * x ** a * y ** b for c, a, b in terms)

    v = [[val(x, y) for y in ys] for x in xs]
    segs = []
    for i in range(grid):
        for j in range(grid):
            corners = [(xs[i], ys[j], v[i][j]), (xs[i + 1], ys[j], v[i + 1][j]),
                       (xs[i + 1], ys[j + 1], v[i + 1][j + 1]), (xs[i], ys[j + 1], v[i][j + 1])]
            cross = []
            for k in range(4):
                (xa, ya, va), (xb, yb, vb) = corners[k], corners[(k + 1) % 4]
                if (va < 0) != (vb < 0):
                    s = va / (va - vb)
                    cross.append((xa + s * (xb - xa), ya + s * (yb - ya)))
            if len(cross) == 2:
                segs.append((cross[0], cross[1]))
            elif len(cross) == 4:
                segs.append((cross[0], cross[1]))
                segs.append((cross[2], cross[3]))
    return segs


def figure5_csv(window=DEFAULT_WINDOW, samples: int = 201, grid: int = 200) -> str:
    f = _affine("icosa")
    rows = ["curve,X,Y,residual"]
    for name, pts in figure5_lines(window, samples).items():
        rows += [f"{name},{x:.15g},{y:.15g},{r:.15g}" for x, y, r in pts]
    for (xa, ya), _ in figure5_contour(window, grid):
        r = float(f.evaluate({"B": Fraction(xa), "C": Fraction(ya)}))
        rows.append(f"icosa,{xa:.15g},{ya:.15g},{r:.15g}")
    return "\n".join(rows) + "\n"


def figure5_svg(window=DEFAULT_WINDOW, samples: int = 201, grid: int = 200, size: int = 600) -> str:
    x0, x1, y0, y1 = window

    def px(x, y):
        return (size * (x - x0) / (x1 - x0), size * (1 - (y - y0) / (y1 - y0)))

    colors = {"R1": "#1f77b4", "R2": "#d62728"}
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
             f'viewBox="0 0 {size} {size}">',
             f'<rect width="{size}" height="{size}" fill="white"/>']
    for name, pts in figure5_lines(window, samples).items():
        path = " ".join("{:.3f},{:.3f}".format(*px(x, y)) for x, y, _ in pts)
        parts.append(f'<polyline id="{name}" fill="none" stroke="{colors[name]}" '
                     f'stroke-width="1.5" points="{path}"/>')
    for (xa, ya), (xb, yb) in figure5_contour(window, grid):
        (ax, ay), (bx, by) = px(xa, ya), px(xb, yb)
        parts.append(f'<polyline class="icosa" fill="none" stroke="black" stroke-width="1" '
                     f'points="{ax:.3f},{ay:.3f} {bx:.3f},{by:.3f}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
