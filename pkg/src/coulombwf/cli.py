"""Command-line interface.

Subcommands: ``coeffs`` (exact coefficient listing of an irregular solution),
``eval`` (numeric grid of either solution), ``table`` (all solutions up to
n_max), ``verify`` (oracle suite with exit code), ``shell`` (piecewise
matching demo).  Rational coefficients are always serialized as "num/den"
strings so exactness survives the pipe.

Exit codes: 0 success, 1 verification/runtime failure, 2 no root in the shell
scan, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__, numeval, oracle, shellmatch
from .closedform import (
    InvalidQuantumNumbers,
    QuantumNumbers,
    assemble_R1,
    assemble_R2,
    solution_table,
)
from .ratpoly import RatPoly

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_NO_ROOT = 2
EXIT_USAGE = 64

# Sample set for the principal-value cross-checks: small (n_r, m) pairs with
# several abscissas each, all within the quadrature oracle's rated range.
PV_SAMPLES: list[tuple[int, int, tuple[float, ...]]] = [
    (0, 1, (0.5, 1.0, 2.0)),
    (1, 1, (0.5, 1.0, 2.0)),
    (2, 1, (1.0, 2.0)),
    (0, 3, (0.5, 2.0)),
    (1, 3, (1.0,)),
    (0, 5, (1.0,)),
    (2, 3, (2.0,)),
    (1, 5, (0.5,)),
]


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse default exits 2; keep 2 for no-root
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rat_dict(p: RatPoly) -> dict[str, str]:
    return {str(k): str(c) for k, c in p.terms()}


def _poly_from_rat_dict(d: dict[str, str]) -> RatPoly:
    return RatPoly.from_terms({int(k): Fraction(v) for k, v in d.items()})


def _write(out_path: str | None, text: str) -> None:
    if out_path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _header() -> str:
    return f"# coulombwf {__version__}\n"


# -- latex rendering ---------------------------------------------------------


def _latex_coeff_times_power(c: Fraction, k: int) -> str:
    num, den = abs(c.numerator), c.denominator
    if k == 0:
        return str(num) if den == 1 else rf"\frac{{{num}}}{{{den}}}"
    r_pow = "r" if abs(k) == 1 else rf"r^{{{abs(k)}}}"
    if k < 0:
        top = str(num)
        bottom = r_pow if den == 1 else f"{den}{r_pow}"
        return rf"\frac{{{top}}}{{{bottom}}}"
    if den == 1:
        return r_pow if num == 1 else f"{num}{r_pow}"
    return rf"\frac{{{num}}}{{{den}}}{r_pow}"


def _latex_poly(p: RatPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k, c in p.terms():
        term = _latex_coeff_times_power(c, k)
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"+{term}" if c > 0 else f"-{term}")
    return "".join(parts)


def _latex_exponent(n: int, sign: str) -> str:
    return rf"e^{{{sign}r}}" if n == 1 else rf"e^{{{sign}r/{n}}}"


def _latex_ei_lower(n: int) -> str:
    num, den = Fraction(2, n).as_integer_ratio()
    body = "r" if num == 1 else f"{num}r"
    return f"-{body}" if den == 1 else f"-{body}/{den}"


def _latex_R2(qn: QuantumNumbers, form) -> str:
    return (
        rf"R_2({qn.n},{qn.l},r) = \left({_latex_poly(form.q_plus)}\right) "
        rf"{_latex_exponent(qn.n, '')} + \left({_latex_poly(form.q_ei)}\right) "
        rf"{_latex_exponent(qn.n, '-')} "
        rf"\int_{{{_latex_ei_lower(qn.n)}}}^{{\infty}} \frac{{e^{{-s}}}}{{s}}\,ds"
    )


# -- coeffs ------------------------------------------------------------------


def _coeffs_doc(qn: QuantumNumbers) -> dict:
    form = assemble_R2(qn)
    return {
        "n": qn.n,
        "l": qn.l,
        "q_plus": _rat_dict(form.q_plus),
        "q_ei": _rat_dict(form.q_ei),
        "ei_arg_scale": str(-2 * form.kappa),
    }


def cmd_coeffs(args) -> int:
    qn = QuantumNumbers(args.n, args.l)
    form = assemble_R2(qn)
    if args.format == "json":
        _write(args.out, json.dumps(_coeffs_doc(qn), indent=2) + "\n")
    elif args.format == "csv":
        lines = [_header(), "power,q_plus,q_ei\n"]
        powers = sorted(set(form.q_plus.as_dict()) | set(form.q_ei.as_dict()))
        for k in powers:
            qp = form.q_plus.coeff(k)
            qe = form.q_ei.coeff(k)
            lines.append(f"{k},{qp if qp else ''},{qe if qe else ''}\n")
        _write(args.out, "".join(lines))
    else:
        _write(args.out, _header() + _latex_R2(qn, form) + "\n")
    return EXIT_OK


# -- eval ----------------------------------------------------------------------


def _parse_grid(grid_arg: str) -> list[float]:
    try:
        start_s, stop_s, count_s = grid_arg.split(":")
        start, stop, count = float(start_s), float(stop_s), int(count_s)
    except ValueError as exc:
        raise ValueError(f"grid must be start:stop:count, got {grid_arg!r}") from exc
    if count < 0:
        raise ValueError("grid count must be >= 0")
    if count == 0:
        return []
    if start <= 0 or stop < start:
        raise ValueError("grid must be positive and increasing")
    if count == 1:
        return [start]
    return [start + i * (stop - start) / (count - 1) for i in range(count)]


def cmd_eval(args) -> int:
    qn = QuantumNumbers(args.n, args.l)
    form = assemble_R1(qn) if args.which == "R1" else assemble_R2(qn)
    grid = _parse_grid(args.grid)
    rows = []
    for r in grid:
        res = numeval.eval_form(form, r)
        rows.append((r, res.value, res.est_rel_error))
    if args.format == "json":
        doc = {"n": qn.n, "l": qn.l, "which": args.which,
               "rows": [{"r": r, "value": v, "est_rel_error": e} for r, v, e in rows]}
        _write(args.out, json.dumps(doc, indent=2) + "\n")
    else:
        lines = [_header(), "r,value,est_rel_error\n"]
        lines += [f"{r!r},{v!r},{e!r}\n" for r, v, e in rows]
        _write(args.out, "".join(lines))
    return EXIT_OK


# -- table ---------------------------------------------------------------------


def cmd_table(args) -> int:
    entries = solution_table(args.nmax)
    if args.format == "json":
        docs = []
        for qn, r1, r2 in entries:
            doc = _coeffs_doc(qn)
            doc["r1_q_minus"] = _rat_dict(r1.q_minus)
            docs.append(doc)
        _write(args.out, json.dumps(docs, indent=2) + "\n")
    elif args.format == "csv":
        lines = [_header(), "n,l,part,power,coeff\n"]
        for qn, r1, r2 in entries:
            for part, poly in (("r1_q_minus", r1.q_minus), ("q_plus", r2.q_plus), ("q_ei", r2.q_ei)):
                for k, c in poly.terms():
                    lines.append(f"{qn.n},{qn.l},{part},{k},{c}\n")
        _write(args.out, "".join(lines))
    else:
        lines = [_header()]
        lines += [_latex_R2(qn, r2) + "\n" for qn, _, r2 in entries]
        _write(args.out, "".join(lines))
    return EXIT_OK


# -- verify ----------------------------------------------------------------------


def _symbolic_case(case: tuple[int, int]) -> list[dict]:
    qn = QuantumNumbers(*case)
    out = [
        oracle.ode_residual_symbolic(assemble_R1(qn), qn, "R1").to_dict(),
        oracle.ode_residual_symbolic(assemble_R2(qn), qn, "R2").to_dict(),
        oracle.wronskian_symbolic(qn)[1].to_dict(),
    ]
    return out


def _selected_symbolic(checks: set[str], reports: list[dict]) -> list[dict]:
    keep = []
    for rep in reports:
        if rep["check"].startswith("ode_residual") and "ode" in checks:
            keep.append(rep)
        elif rep["check"] == "wronskian" and "wronskian" in checks:
            keep.append(rep)
    return keep


ALL_CHECKS = ("ode", "wronskian", "golden", "pv", "split", "integral")


def run_verify(n_max: int, checks: set[str], parallel: bool) -> list[dict]:
    reports: list[dict] = []
    if "golden" in checks:
        reports += [rep.to_dict() for rep in oracle.golden_table_check()]
    if checks & {"ode", "wronskian"}:
        cases = [(n, l) for n in range(1, n_max + 1) for l in range(n)]
        if parallel:
            with ProcessPoolExecutor() as pool:
                for case_reports in pool.map(_symbolic_case, cases):
                    reports += _selected_symbolic(checks, case_reports)
        else:
            for case in cases:
                reports += _selected_symbolic(checks, _symbolic_case(case))
    if "pv" in checks:
        for n_r, m, xs in PV_SAMPLES:
            reports.append(oracle.pv_closedform_check(n_r, m, list(xs)).to_dict())
    if "split" in checks:
        for n_r, m, xs in PV_SAMPLES:
            reports.append(oracle.pole_split_identity_check(n_r, m, list(xs)).to_dict())
    if "integral" in checks:
        for n_r, m in ((0, 1), (1, 1), (0, 3), (2, 1), (1, 3)):
            reports.append(oracle.first_integral_closed_form_check(n_r, m).to_dict())
    return reports


def cmd_verify(args) -> int:
    checks = set(args.checks.split(",")) if args.checks else set(ALL_CHECKS)
    unknown = checks - set(ALL_CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}; choose from {ALL_CHECKS}")
    reports = run_verify(args.nmax, checks, args.parallel)
    if args.format == "json":
        text = "".join(json.dumps(rep) + "\n" for rep in reports)
    else:
        lines = [_header(), "n,l,check,passed,residual_norm,exact,details\n"]
        lines += [
            f"{rep['n'] if rep['n'] is not None else ''},"
            f"{rep['l'] if rep['l'] is not None else ''},"
            f"{rep['check']},{rep['passed']},{rep['residual_norm']!r},{rep['exact']},"
            f"\"{rep['details']}\"\n"
            for rep in reports
        ]
        text = "".join(lines)
    _write(args.out, text)
    n_failed = sum(1 for rep in reports if not rep["passed"])
    if n_failed:
        print(f"{n_failed} of {len(reports)} checks FAILED", file=sys.stderr)
        return EXIT_FAIL
    print(f"all {len(reports)} checks passed", file=sys.stderr)
    return EXIT_OK


# -- shell -------------------------------------------------------------------


def cmd_shell(args) -> int:
    try:
        b_min_s, b_max_s = args.b_range.split(":")
        b_range = (float(b_min_s), float(b_max_s))
    except ValueError as exc:
        raise ValueError(f"b-range must be min:max, got {args.b_range!r}") from exc
    qn = QuantumNumbers(args.n, args.l)
    config = shellmatch.ShellConfig(qn, args.a, b_range, args.step)
    try:
        result = shellmatch.match_shell(config)
    except shellmatch.NoRootInRange as exc:
        sys.stderr.write(f"no root: {exc}\n")
        sys.stderr.write("b,mismatch\n")
        for b, f in exc.scan:
            sys.stderr.write(f"{b!r},{f!r}\n")
        return EXIT_NO_ROOT
    doc = {
        "n": qn.n, "l": qn.l, "a": config.a,
        "b_star": result.b_star, "c1": result.c1, "c2": result.c2,
        "mismatch": result.mismatch,
        "continuity": shellmatch.continuity_residuals(config, result),
    }
    if args.grid_points:
        doc["grid"] = [[r, u] for r, u in
                       shellmatch.piecewise_grid(config, result, args.grid_points)]
    if args.format == "json":
        _write(args.out, json.dumps(doc, indent=2) + "\n")
    else:
        lines = [_header(), "key,value\n"]
        for key in ("n", "l", "a", "b_star", "c1", "c2", "mismatch"):
            lines.append(f"{key},{doc[key]!r}\n")
        for key, val in doc["continuity"].items():
            lines.append(f"continuity_{key},{val!r}\n")
        if args.grid_points:
            lines.append("r,u\n")
            lines += [f"{r!r},{u!r}\n" for r, u in doc["grid"]]
        _write(args.out, "".join(lines))
    return EXIT_OK


# -- wiring --------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="coulombwf",
                     description="Exact regular/irregular Coulomb bound-state radial solutions")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("coeffs", help="exact coefficients of an irregular solution")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv", "latex"), default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("eval", help="numeric values on an r grid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--which", choices=("R1", "R2"), default="R2")
    p.add_argument("--grid", required=True, metavar="START:STOP:COUNT")
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("table", help="all solutions with n <= nmax")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv", "latex"), default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run oracle checks; exit 0 iff all pass")
    p.add_argument("--nmax", type=int, default=4)
    p.add_argument("--checks", default=None, help=f"comma list from {ALL_CHECKS}")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--parallel", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("shell", help="piecewise Coulomb-shell matching demo")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b-range", required=True, metavar="MIN:MAX")
    p.add_argument("--step", type=float, default=0.01)
    p.add_argument("--grid-points", type=int, default=0)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_shell)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (InvalidQuantumNumbers, ValueError) as exc:
        sys.stderr.write(f"coulombwf: error: {exc}\n")
        return EXIT_USAGE
    except (numeval.OverflowSignal, oracle.QuadratureFailure, shellmatch.StepSizeTooCoarse) as exc:
        sys.stderr.write(f"coulombwf: failure: {exc}\n")
        return EXIT_FAIL


def entry() -> None:
    sys.exit(main())
