"""Command-line front end: ``icosashimura <command> ...``.

Every command prints a report (JSON by default, ``--format text`` for a
summary) and exits with 0 when all verdicts pass, 1 when any fails and 2
when nothing failed but some verdict is indeterminate.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from pathlib import Path

from . import __version__

SCHEMA_VERSION = 1
PASS, FAIL, INDET = "pass", "fail", "indeterminate"


def _num(x: float) -> float:
    return float(f"{x:.15g}")


def _cnum(z: complex) -> dict:
    return {"re": _num(z.real), "im": _num(z.imag)}


def _status(ok) -> str:
    if ok is None:
        return INDET
    return PASS if ok else FAIL


class Report:
    def __init__(self, command: str, inputs: dict, seed: int | None = None):
        self.command = command
        self.inputs = inputs
        self.seed = seed
        self.verdicts: list[dict] = []
        self.timings: dict[str, float] = {}
        self.extra: dict = {}

    def add(self, name: str, ok, **details):
        v = {"name": name, "status": _status(ok)}
        v.update(details)
        self.verdicts.append(v)

    def exit_code(self) -> int:
        states = {v["status"] for v in self.verdicts}
        if FAIL in states:
            return 1
        if INDET in states:
            return 2
        return 0

    def to_json_obj(self, with_timings: bool) -> dict:
        d = {"schema_version": SCHEMA_VERSION, "tool_version": __version__, "command": self.command,
             "inputs": self.inputs, "seed": self.seed, "verdicts": self.verdicts}
        d.update(self.extra)
        if with_timings:
            d["timings"] = {k: round(v, 3) for k, v in self.timings.items()}
        return d

    def to_text(self) -> str:
        lines = [f"{self.command}  (schema {SCHEMA_VERSION}, version {__version__})"]
        for v in self.verdicts:
            extra = {k: w for k, w in v.items() if k not in ("name", "status")}
            tail = "  " + json.dumps(extra, sort_keys=True) if extra else ""
            lines.append(f"  [{v['status'].upper():>13}] {v['name']}{tail}")
        return "\n".join(lines)


class _Timer:
    def __init__(self, report: Report, key: str):
        self.report, self.key = report, key

    def __enter__(self):
        self.t0 = time.perf_counter()

    def __exit__(self, *exc):
        self.report.timings[self.key] = time.perf_counter() - self.t0


# ---------------------------------------------------------------------------
# verify


VERIFY_TARGETS = ("psi5", "chi8-mod8", "section-s5", "pairing", "singular-relations", "tilde6", "all")


def _verify_psi5(rep: Report):
    from .moduli import verify_map_identity
    rep.add("modular equation 5 vanishes on psi5", verify_map_identity("psi5", 5))


def _verify_chi8(rep: Report):
    from .moduli import verify_map_identity
    rep.add("modular equation 8 vanishes on chi8", verify_map_identity("chi8", 8))
    rep.add("modular equation 5 does not vanish on chi8", not verify_map_identity("chi8", 5))


def _verify_section(rep: Report):
    from .moduli import section_identity_check
    rep.add("section s5 satisfies the Weierstrass equation", section_identity_check())


def _verify_pairing(rep: Report):
    from .quaternion import J4, TRIPLES, eta_basis, pairing_matrix
    for D, t in TRIPLES.items():
        integral = all(x.is_integral() for x in eta_basis(t))
        rep.add(f"pairing matrix is J for D={D}", pairing_matrix(t) == [list(r) for r in J4],
                triple=[t.p, t.a, t.b], eta_integral=integral)


def _verify_singular(rep: Report, bound: int):
    from .quaternion import TRIPLES, singular_relation_identity
    for D, t in TRIPLES.items():
        bad = [(m, n) for m in range(-bound, bound + 1) for n in range(-bound, bound + 1)
               if not singular_relation_identity(t, m, n)]
        rep.add(f"singular relations hold for D={D}, |m|,|n| <= {bound}", not bad,
                failures=[list(p) for p in bad[:5]])


def _verify_tilde6(rep: Report):
    from .quaternion import omega6_conjugation_exact, tilde6_trace_relation, tilde_omega6_exact
    rep.add("-tau1 + tau2 + tau3 = 0 for the conjugated D=6 embedding", tilde6_trace_relation().is_zero())
    c, t = omega6_conjugation_exact(), tilde_omega6_exact()
    rep.add("M-conjugate of the D=6 embedding equals the closed form",
            all(c[i][j] == t[i][j] for i in range(2) for j in range(2)))


def cmd_verify(args) -> Report:
    rep = Report("verify", {"target": args.target, "bound": args.bound})
    targets = VERIFY_TARGETS[:-1] if args.target == "all" else (args.target,)
    for tg in targets:
        with _Timer(rep, tg):
            if tg == "psi5":
                _verify_psi5(rep)
            elif tg == "chi8-mod8":
                _verify_chi8(rep)
            elif tg == "section-s5":
                _verify_section(rep)
            elif tg == "pairing":
                _verify_pairing(rep)
            elif tg == "singular-relations":
                _verify_singular(rep, args.bound)
            elif tg == "tilde6":
                _verify_tilde6(rep)
    return rep


# ---------------------------------------------------------------------------
# eliminate


def _report_from_identification(rep: Report, ir):
    for name, ok in ir.checks.items():
        rep.add(name, ok)
    rep.extra["components"] = [c.to_json_obj() for c in ir.components]
    rep.extra["generator_degrees"] = [g.weighted_degree()[1] for g in ir.generators]
    rep.extra["gb_stats"] = {k: {kk: vv for kk, vv in v.items() if kk != "seconds"}
                             for k, v in ir.stats.items()}
    if ir.notes:
        rep.extra["notes"] = ir.notes
    rep.timings["pipeline"] = ir.seconds


def cmd_eliminate(args) -> Report:
    from .catalog import reproduce, sample_pair
    from .groebner import Limits
    mode = "sample" if args.sample else "full"
    rep = Report("eliminate", {"pair": args.pair, "mode": mode, "max_seconds": args.max_seconds,
                               "points": args.points, "components": args.components}, seed=args.seed)
    limits = Limits(max_seconds=args.max_seconds)
    if mode == "full":
        ir = reproduce(args.pair, limits)
    else:
        if args.pair == "21-workaround":
            raise SystemExit("eliminate: --sample applies to 5,8 and 5,12")
        delta = int(args.pair.split(",")[1])
        names = args.components.split(",") if args.components else None
        try:
            ir = sample_pair(delta, args.points, args.points, args.seed, names=names)
        except ValueError as exc:
            raise SystemExit(f"eliminate: {exc}") from None
    _report_from_identification(rep, ir)
    if args.dump_generators:
        Path(args.dump_generators).write_text(json.dumps([g.to_json_obj() for g in ir.generators]))
    return rep


# ---------------------------------------------------------------------------
# qform


def cmd_qform(args) -> Report:
    from .quaternion import delta_form, represents, singular_relation_identity, triple
    t = triple(args.D)
    f = delta_form(t)
    rep = Report("qform", {"D": args.D, "delta": args.delta, "bound": args.bound})
    rep.extra["form"] = {"coefficients": list(f.coefficients()), "discriminant": f.discriminant,
                         "positive_definite": f.positive_definite, "triple": [t.p, t.a, t.b]}
    r = represents(f, args.delta, args.bound)
    details = {"result": r.status, "search_bound": r.bound}
    if r.witness:
        m, n = r.witness
        details["witness"] = [m, n]
        details["singular_relation_holds"] = singular_relation_identity(t, m, n)
    # a complete negative answer is a valid outcome, an inconclusive search is not
    ok = True if r.status in ("represented", "not-represented") else None
    rep.add(f"representation of {args.delta} by Delta_{args.D}", ok, **details)
    return rep


# ---------------------------------------------------------------------------
# theta


def cmd_theta(args) -> Report:
    from .theta import (PoleError, ThetaError, elliptic_J, format_complex, hilbert_XY, parse_complex,
                        shimura6_numeric_residual, tilde_omega6)
    if args.shimura6:
        rep = Report("theta", {"mode": "shimura6", "samples": args.samples, "tol": args.tol}, seed=args.seed)
        rng = random.Random(args.seed)
        rows = []
        done = 0
        while done < args.samples:
            w = complex(rng.uniform(-1.0, 1.0), rng.uniform(0.3, 1.5))
            try:
                if tilde_omega6(w).lambda_min() < 0.05:
                    continue
                res = shimura6_numeric_residual(w)
            except (PoleError, ThetaError) as exc:
                rep.add(f"w = {format_complex(w)}", None, error=str(exc))
                done += 1
                continue
            rows.append((w, res))
            rep.add(f"R2 residual at w = {format_complex(w)}", res < args.tol, residual=_num(res))
            done += 1
        if args.csv:
            lines = ["w_re,w_im,residual"] + [f"{w.real:.15g},{w.imag:.15g},{r:.15g}" for w, r in rows]
            Path(args.csv).write_text("\n".join(lines) + "\n")
        return rep
    if args.z1 is None:
        raise SystemExit("theta: give --z1 (and optionally --z2) or --shimura6")
    z1 = parse_complex(args.z1)
    z2 = parse_complex(args.z2) if args.z2 else z1
    rep = Report("theta", {"z1": args.z1, "z2": args.z2 or args.z1})
    try:
        X, Y = hilbert_XY(z1, z2)
    except ThetaError as exc:
        rep.add("evaluate (X, Y)", None, error=str(exc))
        return rep
    rep.extra["X"] = _cnum(X)
    rep.extra["Y"] = _cnum(Y)
    rep.add("evaluate (X, Y)", True, X=format_complex(X), Y=format_complex(Y))
    if z1 == z2:
        J = elliptic_J(z1)
        rep.extra["J"] = _cnum(J)
        rep.add("diagonal: Y = 0", abs(Y) < 1e-10, abs_Y=_num(abs(Y)))
        rep.add("diagonal: X * J = 25/27", abs(X * J - 25 / 27) < 1e-9, deviation=_num(abs(X * J - 25 / 27)))
    return rep


# ---------------------------------------------------------------------------
# plot


def _parse_window(text: str) -> tuple[float, float, float, float]:
    vals = tuple(float(v) for v in text.split(","))
    if len(vals) != 4 or vals[0] >= vals[1] or vals[2] >= vals[3]:
        raise argparse.ArgumentTypeError("window is x0,x1,y0,y1 with x0 < x1 and y0 < y1")
    return vals


def cmd_plot(args) -> Report:
    from .catalog import figure5_csv, figure5_lines, figure5_svg
    rep = Report("plot", {"figure": args.figure, "window": list(args.window), "out": args.out,
                          "grid": args.grid, "samples": args.samples})
    written = []
    if args.out in ("csv", "both"):
        path = Path(f"{args.prefix}.csv")
        path.write_text(figure5_csv(args.window, args.samples, args.grid))
        written.append(str(path))
    if args.out in ("svg", "both"):
        path = Path(f"{args.prefix}.svg")
        path.write_text(figure5_svg(args.window, args.samples, args.grid))
        written.append(str(path))
    lines = figure5_lines(args.window, args.samples)
    for name, pts in lines.items():
        worst = max((abs(r) for _, _, r in pts), default=0.0)
        rep.add(f"{name} samples lie on the curve", worst < 1e-9, points=len(pts), worst_residual=_num(worst))
    rep.extra["files"] = written
    return rep


# ---------------------------------------------------------------------------
# curves


def cmd_curves(args) -> Report:
    from .catalog import CURVE_NAMES, c_zero_sections, curve, passes_cusp
    names = [args.name] if args.name else list(CURVE_NAMES)
    rep = Report("curves", {"name": args.name, "polynomials": args.polynomials})
    out = []
    for n in names:
        c = curve(n)
        sl = c_zero_sections(c)
        d = {"name": n, "role": c.role, "degree": c.degree(), "passes_cusp": passes_cusp(c),
             "shimura_discriminant": c.shimura,
             "c0_roots": [{"t": str(r), "multiplicity": m} for r, m in sl.roots],
             "c0_cofactor_degree": sl.remainder.degree()}
        if args.polynomials:
            d["polynomial"] = c.poly.to_text()
        out.append(d)
        rep.add(f"{n} is weighted-homogeneous", c.poly.weighted_degree()[0])
    rep.extra["curves"] = out
    return rep


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    # output flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("--timings", action="store_true", default=argparse.SUPPRESS,
                        help="include wall-clock timings in the report")
    p = argparse.ArgumentParser(prog="icosashimura", description=__doc__.splitlines()[0], parents=[common])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="exact symbolic identity checks")
    v.add_argument("target", choices=VERIFY_TARGETS)
    v.add_argument("--bound", type=int, default=10, help="|m|,|n| range for singular relations")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("eliminate", parents=[common], help="elimination pipelines or their fiber-sampling substitutes")
    e.add_argument("pair", choices=("5,8", "5,12", "21-workaround"))
    g = e.add_mutually_exclusive_group()
    g.add_argument("--full", action="store_true", help="run the Groebner elimination (default)")
    g.add_argument("--sample", action="store_true", help="check fibers over sampled points instead")
    e.add_argument("--max-seconds", type=float, default=3600.0)
    e.add_argument("--points", type=int, default=3, help="points per curve in --sample mode")
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--components", help="comma-separated curves to sample in --sample mode (default: all)")
    e.add_argument("--dump-generators", metavar="PATH", help="write eliminant generators as JSON")
    e.set_defaults(func=cmd_eliminate)

    q = sub.add_parser("qform", parents=[common], help="representations by the quadratic form of a discriminant triple")
    q.add_argument("D", type=int, choices=(6, 10, 14, 15))
    q.add_argument("--delta", type=int, required=True)
    q.add_argument("--bound", type=int, default=None, help="search bound for indefinite forms")
    q.set_defaults(func=cmd_qform)

    t = sub.add_parser("theta", parents=[common], help="theta-constant numerics")
    t.add_argument("--z1")
    t.add_argument("--z2")
    t.add_argument("--shimura6", action="store_true", help="R2 residual along the D=6 embedding")
    t.add_argument("--samples", type=int, default=5)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--tol", type=float, default=1e-6)
    t.add_argument("--csv", metavar="PATH", help="write the (w, residual) trace")
    t.set_defaults(func=cmd_theta)

    pl = sub.add_parser("plot", parents=[common], help="export R1, R2 and the icosahedral locus")
    pl.add_argument("figure", choices=("figure5",))
    pl.add_argument("--window", type=_parse_window, default=(-0.5, 1.5, -3.0, 6.0), help="x0,x1,y0,y1")
    pl.add_argument("--out", choices=("csv", "svg", "both"), default="both")
    pl.add_argument("--prefix", default="figure5")
    pl.add_argument("--grid", type=int, default=200)
    pl.add_argument("--samples", type=int, default=201)
    pl.set_defaults(func=cmd_plot)

    c = sub.add_parser("curves", parents=[common], help="dump the curve catalog")
    c.add_argument("--name", choices=("R1", "R2", "R3", "R4", "L1", "L2", "MonoGene", "icosa"))
    c.add_argument("--polynomials", action="store_true")
    c.set_defaults(func=cmd_curves)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    # parent-parser actions are shared, so defaults live here rather than in set_defaults
    fmt = getattr(args, "format", "json")
    rep = args.func(args)
    if fmt == "json":
        print(json.dumps(rep.to_json_obj(getattr(args, "timings", False)), indent=2, sort_keys=True))
    else:
        print(rep.to_text())
    return rep.exit_code()


if __name__ == "__main__":
    sys.exit(main())
