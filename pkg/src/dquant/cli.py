"""Command-line front end: ``dquant <command> [options]``.

Exit status: 0 when every check passes, 1 on a verification failure, 2 on a
usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .algebra import HSeries, Poly, XSeries
from .checks import DEFAULT_SEED, SUITES, run_suites
from .parse import ParseError, parse_assignments, parse_expr, parse_matrix, parse_names, parse_rational
from .poisson import BiVector, DarbouxFrame, GaugePart, LinearIdeal, bracket, conic_frame, is_coisotropic
from .presets import KS4D_PARAMS, conic_curve, ks4d, ks4d_degeneracy, ks4d_printed_c0, ks4d_printed_c1
from .reduction import (
    CoisotropicSubspace,
    LinearLagrangian,
    ReductionReport,
    SingularPivotError,
    TransversalityError,
    annihilator_residuals,
    reduce_wavefunction,
)
from .star import StarContext, commutator, star
from .weyl import phi
from .wkb import CurveIdeal, lambda_ode, lambda_residual, lambda_solve, wkb_residual, wkb_solve

SCHEMA_VERSION = "1"
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# serialisation


def rational_record(c: Any) -> dict:
    if isinstance(c, Fraction):
        return {"numerator": str(c.numerator), "denominator": str(c.denominator)}
    return {"expression": str(c)}


def poly_record(p: Poly) -> dict:
    return {"vars": list(p.vars), "terms": term_records(p)}


def term_records(p: Poly) -> list[dict]:
    out = []
    for m, c in p.sorted_terms():
        rec = {"exponents": list(m)}
        rec.update(rational_record(c))
        out.append(rec)
    return out


def hseries_record(s: HSeries) -> dict:
    return {"vars": list(s.vars), "order": s.order, "coefficients": [term_records(c) for c in s.coeffs]}


def matrix_record(A: Sequence[Sequence[Any]]) -> list[list[dict]]:
    return [[rational_record(x) for x in row] for row in A]


def coeff_list(s: XSeries) -> list[dict]:
    return [rational_record(c) for c in s.coefficients()]


def _fmt(c: Any) -> str:
    return str(c)


# ---------------------------------------------------------------------------
# configuration


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        v = int(raw)
    except ValueError:
        raise UsageError(f"{name} must be a positive integer, got {raw!r}") from None
    if v <= 0:
        raise UsageError(f"{name} must be a positive integer, got {raw!r}")
    return v


def default_order() -> int:
    return _env_int("DQUANT_HBAR_ORDER", 6)


def default_degree() -> int:
    return _env_int("DQUANT_DEGREE", 12)


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _bivector_from_args(pi_text: str, vars_text: str | None) -> BiVector:
    if pi_text in ("std2", "conic"):
        frame = conic_frame()
        if vars_text and parse_names(vars_text) != frame.vars:
            raise UsageError("std2 uses the variables x,y")
        return frame.bivector()
    if pi_text == "std4":
        return DarbouxFrame(("x1", "x2"), ("y1", "y2"), 1).bivector()
    if not vars_text:
        raise UsageError("an explicit --pi matrix needs --vars")
    vars = parse_names(vars_text)
    try:
        return BiVector(parse_matrix(pi_text), vars)
    except ValueError as e:
        if isinstance(e, ParseError):
            raise
        raise UsageError(str(e)) from None


# ---------------------------------------------------------------------------
# commands


class Outcome:
    def __init__(self, command: str):
        self.command = command
        self.checks: list[dict] = []
        self.result: dict = {}
        self.lines: list[str] = []

    def check(self, name: str, passed: bool, detail: str | None = None) -> bool:
        rec: dict = {"name": name, "passed": bool(passed)}
        if detail:
            rec["detail"] = detail
        self.checks.append(rec)
        return passed

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def document(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "status": "pass" if self.passed else "fail",
            "checks": self.checks,
            "result": self.result,
        }

    def text(self) -> str:
        out = list(self.lines)
        for c in self.checks:
            mark = "PASS" if c["passed"] else "FAIL"
            out.append(f"[{mark}] {c['name']}" + (f": {c['detail']}" if c.get("detail") else ""))
        return "\n".join(out)


def _series_table(s: HSeries) -> list[str]:
    lines = []
    for k, c in enumerate(s.coeffs):
        if not c.is_zero():
            lines.append(f"  hbar^{k}: {c}")
    return lines or ["  0"]


def cmd_star(args) -> Outcome:
    out = Outcome("star")
    b = _bivector_from_args(args.pi, args.vars)
    gamma = None
    if args.gamma:
        try:
            gamma = GaugePart(parse_matrix(args.gamma), b.vars)
        except ParseError:
            raise
        except ValueError as e:
            raise UsageError(str(e)) from None
    order = args.order or default_order()
    ctx = StarContext(b, gamma, order)
    f = parse_expr(args.f, b.vars)
    g = parse_expr(args.g, b.vars)
    prod = star(f, g, ctx)
    comm = commutator(f, g, ctx)
    out.result = {
        "vars": list(b.vars),
        "bivector": matrix_record(b.pi),
        "f": poly_record(f),
        "g": poly_record(g),
        "product": hseries_record(prod),
    }
    out.lines = [f"{f} * {g} =", *_series_table(prod)]
    if gamma is None:
        out.check("commutator/hbar recovers the bracket", comm.divide_hbar()[0] == bracket(f, g, b))
    return out


def _curve_from_args(args) -> CurveIdeal:
    frame = conic_frame()
    if args.vars:
        names = parse_names(args.vars)
        if len(names) != 2:
            raise UsageError("--vars must name exactly two variables x,y")
        frame = DarbouxFrame((names[0],), (names[1],), -1)
    H = parse_expr(args.curve, frame.vars)
    shift = parse_rational(args.shift) if args.shift is not None else Fraction(0)
    try:
        return CurveIdeal(H, (shift,), frame)
    except ValueError as e:
        raise UsageError(str(e)) from None


def cmd_wkb(args) -> Outcome:
    out = Outcome("wkb")
    curve = _curve_from_args(args)
    G = args.orders if args.orders is not None else default_order()
    if G < 0:
        raise UsageError("--orders must be non-negative")
    D = args.degree or default_degree()
    sol = wkb_solve(curve, G, D)
    res = wkb_residual(sol)
    out.result = {
        "curve": poly_record(curve.H),
        "shift": [rational_record(c) for c in curve.shift],
        "orders": G,
        "degree": D,
        "u": [coeff_list(u) for u in sol.u],
        "S": [coeff_list(s) for s in sol.S],
    }
    out.lines = [f"curve: {curve.H} = 0, hbar*j = {curve.shift[0]}*hbar"]
    for g, u in enumerate(sol.u):
        out.lines.append(f"u_{g}: " + ", ".join(_fmt(c) for c in u.coefficients()))
    for g, s in enumerate(sol.S):
        out.lines.append(f"S_{g}: " + ", ".join(_fmt(c) for c in s.coefficients()))
    out.check("conjugated equation vanishes to all computed orders", all(r.is_zero() for r in res))
    return out


def cmd_lambda(args) -> Outcome:
    out = Outcome("lambda")
    curve = _curve_from_args(args)
    seeds = [parse_rational(s) for s in args.seeds.split(",")]
    if len(seeds) != 2:
        raise UsageError("--seeds takes two rationals, e.g. 1,0")
    L = lambda_solve(seeds[0], seeds[1], args.hpower)
    kappa = lambda_ode(curve)
    resid = lambda_residual(curve, L)
    out.result = {
        "curve": poly_record(curve.H),
        "seeds": [rational_record(s) for s in seeds],
        "hpower": args.hpower,
        "kappa": rational_record(kappa),
        "lambda": [rational_record(c) for c in L.lam],
        "hbar_exponents": [L.hbar_exponent(n) for n in range(L.M + 1)],
    }
    out.lines = [f"H * lambda(H) = H lambda + ({kappa}) hbar^2 lambda''"]
    out.lines += [f"  lambda_{n} = {c}  (hbar^{L.hbar_exponent(n)} kappa^{-(n // 3)})" for n, c in enumerate(L.lam)]
    out.check("recurrence holds", all(d == 0 for d in L.recurrence_defects()))
    out.check("H * lambda(H) residual vanishes", resid.is_zero())
    return out


def _report_record(r: ReductionReport) -> dict:
    E = r.extension
    return {
        "chart": E.chart,
        "zeta": [str(z) for z in E.zeta],
        "xi": [str(x) for x in E.xi],
        "psi_G": str(r.psi_G),
        "psi_L": str(r.psi_L),
        "gaussian": {"P": matrix_record(r.gaussian.P), "exponent": str(r.gaussian)},
        "elimination": {"P": matrix_record(r.elimination.P), "C": matrix_record(r.C), "exponent": str(r.elimination)},
        "c0": rational_record(r.c0) if len(r.C) == 1 else None,
        "c1": rational_record(r.c1) if len(r.C) == 1 else None,
        "z2_coefficient": rational_record(r.z2_coefficient) if len(r.C) == 1 else None,
        "verdict": "AGREE" if r.agree else "DISAGREE",
        "transversal": r.transversal,
    }


def _report_lines(r: ReductionReport) -> list[str]:
    E = r.extension
    lines = [f"extension ({E.chart}):"]
    for z, w, ze, xi in zip(E.zvars, E.wvars, E.zeta, E.xi):
        lines.append(f"  {z} = {ze}, {w} = {xi}")
    lines += [
        f"psi_G = {r.psi_G}",
        f"psi_L = {r.psi_L}",
        f"integral route:     {r.gaussian}",
        f"elimination route:  {r.elimination}",
        f"verdict: {'AGREE' if r.agree else 'DISAGREE'}",
    ]
    return lines


def cmd_reduce(args) -> Outcome:
    out = Outcome("reduce")
    if args.preset:
        values = parse_assignments(args.params) if args.params else None
        if values is not None:
            unknown = set(values) - set(KS4D_PARAMS)
            if unknown:
                raise UsageError(f"unknown parameters: {', '.join(sorted(unknown))}")
            if "C" in values and "B" not in values:
                values["B"] = values["C"]
        try:
            data = ks4d(values)
        except ValueError as e:
            raise UsageError(str(e)) from None
        G, L = data.G, data.L
        out.result["params"] = {k: rational_record(v) for k, v in values.items()} if values else None
    else:
        if not (args.xs and args.ys and args.G and args.L):
            raise UsageError("give --preset ks4d, or --xs, --ys, --G and --L")
        frame = DarbouxFrame(parse_names(args.xs), parse_names(args.ys), args.sign)
        G = CoisotropicSubspace([parse_expr(t, frame.vars) for t in args.G], frame)
        L = LinearLagrangian.from_equations([parse_expr(t, frame.vars) for t in args.L], frame)
        out.result["params"] = None
    try:
        r = reduce_wavefunction(G, L)
    except (TransversalityError, SingularPivotError) as e:
        out.result.update({"verdict": "UNDEFINED", "transversal": not isinstance(e, TransversalityError)})
        out.lines = [f"error: {e}"]
        out.check("reduction defined", False, str(e))
        return out
    out.result.update(_report_record(r))
    out.lines = _report_lines(r)
    out.check("integral and elimination routes agree", r.agree)
    out.check(
        "psi_G annihilated by the quantised ideal",
        all(p.is_zero() for p in annihilator_residuals(r.extension.ideal, r.extension.frame, r.psi_G)),
    )
    return out


def cmd_check(args) -> Outcome:
    out = Outcome("check")
    names = args.suite or list(SUITES)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s): {', '.join(unknown)}; choose from {', '.join(SUITES)}")
    results = run_suites(names, args.seed, args.scale)
    out.result = {
        "seed": args.seed,
        "suites": [{"name": r.name, "cases": r.cases, "failures": len(r.failures)} for r in results],
    }
    for r in results:
        out.lines.append(f"{r.name:22s} cases={r.cases:4d} failures={len(r.failures)}")
        out.check(r.name, r.passed, r.failures[0] if r.failures else None)
    return out


def preset_conic(out: Outcome) -> None:
    curve = conic_curve(0)
    frame = curve.frame
    x, y = Poly.gens(frame.vars)
    ctx = StarContext(frame.bivector(), order=default_order())
    anchors = {
        "x*y": star(x, y, ctx),
        "y*x": star(y, x, ctx),
        "x*x": star(x, x, ctx),
        "y*y": star(y, y, ctx),
    }
    half = Poly.const(Fraction(1, 2), frame.vars)
    out.check("x*y = xy - hbar/2", anchors["x*y"] == HSeries([x * y, -half], ctx.order))
    out.check("y*x = xy + hbar/2", anchors["y*x"] == HSeries([x * y, half], ctx.order))
    out.check("x*x = x^2", anchors["x*x"] == HSeries.from_poly(x * x, ctx.order))
    out.check("y*y = y^2", anchors["y*y"] == HSeries.from_poly(y * y, ctx.order))
    rec = commutator(y, x, ctx).divide_hbar()
    out.check("(y*x - x*y)/hbar = 1", rec == HSeries.from_poly(Poly.one(frame.vars), rec.order))
    phiH = phi(curve.H, frame)
    out.check("phi(H) = -hbar dx + x^2 + 2 hbar x dx + hbar^2 dx^2 + hbar",
              str(phiH) == "x^2 - hbar*dx + hbar + 2*hbar*x*dx + hbar^2*dx^2")
    sol0 = wkb_solve(curve, 1, 11)
    sol1 = wkb_solve(conic_curve(1), 1, 9)
    u0 = sol0.u[0].coefficients()[2:12]
    u1 = sol1.u[1].coefficients()[1:9]
    from math import comb

    catalan = [Fraction(comb(2 * n, n), n + 1) for n in range(1, 11)]
    genus1 = [Fraction(4**n - comb(2 * n, n)) for n in range(1, 9)]
    out.check("u_0 coefficients are Catalan numbers", u0 == catalan)
    out.check("u_1 coefficients are 4^n - C(2n, n) (shift j = 1)", u1 == genus1)
    L = lambda_solve(1, 0, 9)
    out.check("lambda recurrence holds", all(d == 0 for d in L.recurrence_defects()))
    out.check("lambda residual vanishes (H-power 9)", lambda_residual(curve, L).is_zero())
    out.check("mutated lambda_3 is detected", not lambda_residual(curve, L.with_entry(3, Fraction(-1, 5))).is_zero())
    out.result = {
        "preset": "conic",
        "curve": poly_record(curve.H),
        "star": {k: hseries_record(v) for k, v in anchors.items()},
        "phi_H": str(phiH),
        "u0": [rational_record(c) for c in u0],
        "u1": [rational_record(c) for c in u1],
        "lambda": [rational_record(c) for c in L.lam],
    }
    out.lines = [
        "conic H = " + str(curve.H),
        "x*y = " + str(anchors["x*y"]),
        "y*x = " + str(anchors["y*x"]),
        "phi(H) = " + str(phiH),
        "u_0: " + ", ".join(_fmt(c) for c in u0),
        "u_1: " + ", ".join(_fmt(c) for c in u1),
    ]


def preset_ks4d(out: Outcome) -> None:
    one = {"a": 1, "b": 1, "c": 1, "d": 1, "A": 0, "B": 0, "D": 0}
    point = ks4d(one)
    r = reduce_wavefunction(point.G, point.L)
    out.check("routes agree at a=b=c=d=1, A=B=D=0", r.agree)
    out.check("reduced wavefunction is exp(z1^2/hbar)", r.z2_coefficient == 1 and r.c1 == 2)
    sym = ks4d()
    rs = reduce_wavefunction(sym.G, sym.L)
    out.check("routes agree symbolically", rs.agree)
    out.check("c1 = -c0", rs.c1 == -rs.c0)
    out.check("c1 matches the closed form", rs.c1 == ks4d_printed_c1(sym.params))
    pb = sym.G.frame.bivector()
    out.check("G passes the coisotropy check", is_coisotropic(list(sym.G.equations), pb))
    out.check("L with B = C passes the coisotropy check", is_coisotropic(sym.L.equations(), pb))
    cf = conic_frame()
    xs, ys = Poly.gens(cf.vars)
    out.check("<x, y> is rejected under {y, x} = 1", not is_coisotropic(LinearIdeal([xs, ys]), cf.bivector()))
    E = rs.extension
    out.result = {
        "preset": "ks4d",
        "sample": {"params": {k: rational_record(Fraction(v)) for k, v in one.items()}, **_report_record(r)},
        "symbolic": {
            **_report_record(rs),
            "printed_c0": str(ks4d_printed_c0(sym.params)),
            "degeneracy": str(ks4d_degeneracy(sym.params)),
        },
    }
    out.lines = ["sample point a=b=c=d=1, A=B=D=0:"] + ["  " + s for s in _report_lines(r)]
    out.lines += [f"symbolic: zeta = {E.zeta[0]}, xi = {E.xi[0]}", f"  c1 = {rs.c1}", f"  c0 = {rs.c0}"]


def cmd_preset(args) -> Outcome:
    out = Outcome("preset")
    if args.name == "conic":
        preset_conic(out)
    else:
        preset_ks4d(out)
    return out


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit machine-readable JSON")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for random suites")

    p = argparse.ArgumentParser(prog="dquant", description="Exact deformation quantisation toolkit.")
    p.add_argument("--version", action="version", version=f"dquant {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("star", parents=[common], help="star product of two polynomials")
    s.add_argument("--pi", default="std2", help="std2 ({y,x}=1 on x,y), std4 ({x_i,y_i}=1) or a matrix '0,1;-1,0'")
    s.add_argument("--gamma", help="symmetric gauge matrix added to pi")
    s.add_argument("--vars", help="comma-separated variable names for an explicit matrix")
    s.add_argument("--order", type=_positive, help="hbar truncation order (default 6 or $DQUANT_HBAR_ORDER)")
    s.add_argument("f")
    s.add_argument("g")
    s.set_defaults(func=cmd_star)

    w = sub.add_parser("wkb", parents=[common], help="WKB expansion of a plane curve")
    w.add_argument("--curve", required=True, help="H(x, y), e.g. '-y + x^2 + 2*x*y + y^2'")
    w.add_argument("--vars", help="the two variable names, default x,y ({y,x} = 1)")
    w.add_argument("--orders", type=int, help="number of hbar corrections (default 6 or $DQUANT_HBAR_ORDER)")
    w.add_argument("--degree", type=_positive, help="x-degree cap (default 12 or $DQUANT_DEGREE)")
    w.add_argument("--shift", help="constant j in phi(H) - hbar j (default 0)")
    w.set_defaults(func=cmd_wkb)

    lam = sub.add_parser("lambda", parents=[common], help="lambda-series solving H * lambda(H) = 0")
    lam.add_argument("--curve", default="-y + x^2 + 2*x*y + y^2")
    lam.add_argument("--vars", help="the two variable names, default x,y")
    lam.add_argument("--seeds", default="1,0", help="lambda_0,lambda_1")
    lam.add_argument("--hpower", type=_positive, default=9, help="highest power of H")
    lam.add_argument("--shift", help=argparse.SUPPRESS)
    lam.set_defaults(func=cmd_lambda)

    r = sub.add_parser("reduce", parents=[common], help="reduce a Gaussian wavefunction")
    r.add_argument("--preset", choices=["ks4d"])
    r.add_argument("--params", help="a=1,b=1,c=1,d=1,A=0,B=0,D=0 (omit for symbolic parameters)")
    r.add_argument("--xs", help="x variables, e.g. x1,x2")
    r.add_argument("--ys", help="y variables, e.g. y1,y2")
    r.add_argument("--sign", type=int, choices=[1, -1], default=1, help="{x_i, y_i}")
    r.add_argument("--G", action="append", help="linear equation of the coisotropic subspace")
    r.add_argument("--L", action="append", help="linear equation of the Lagrangian")
    r.set_defaults(func=cmd_reduce)

    c = sub.add_parser("check", parents=[common], help="run invariant suites")
    c.add_argument("--suite", action="append", help=f"one of {', '.join(SUITES)} (repeatable)")
    c.add_argument("--scale", type=float, default=1.0, help="multiply the case counts")
    c.set_defaults(func=cmd_check)

    pr = sub.add_parser("preset", parents=[common], help="run a worked example end to end")
    pr.add_argument("name", choices=["conic", "ks4d"])
    pr.set_defaults(func=cmd_preset)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else EXIT_OK
    try:
        outcome = args.func(args)
    except ParseError as e:
        print(f"dquant: parse error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as e:
        print(f"dquant: {e}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        print(json.dumps(outcome.document(), indent=2))
    else:
        print(outcome.text())
    return EXIT_OK if outcome.passed else EXIT_FAIL


def main() -> None:
    sys.exit(run())
