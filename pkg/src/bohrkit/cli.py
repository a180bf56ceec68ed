"""Command-line front end: radii, parameter sweeps, verification suites, tables.

Output is machine readable: single JSON documents for radius and verify
commands, CSV (RFC-4180) or JSON arrays for sweeps, plain aligned text for
the convenience tables.  Exit codes: 0 success, 1 usage/validation error,
2 domain error, 3 numerical failure, 4 unwritable output, 5 verification
assertion failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .errors import (BracketingError, DomainError, NumericalError,
                     PreconditionError)
from .extremal import (identity_suite, lemma1_check, remainder_order_check,
                       sharpness_scan_bernardi, sharpness_scan_cesaro)
from .radii import (DEFAULT_TOL, RadiusResult, bernardi_radius,
                    bernardi_radius_classic, bohr_radius_omega, cesaro_radius)
from .series import DomainGamma

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_NUMERIC = 3
EXIT_OUTPUT = 4
EXIT_ASSERTION = 5

LEMMA1_TOL = 1e-9
IDENTITY_TOL = 1e-10
SLOPE_RANGE = (1.8, 2.2)
DEFAULT_WITNESS_LADDER = (0.99, 0.999, 0.9999)
DEFAULT_ORDER_LADDER = (0.9, 0.99, 0.999, 0.9999)

THREADS_ENV = "BOHRKIT_THREADS"


class _Parser(argparse.ArgumentParser):
    """argparse parser that reports usage errors with exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class SweepSpec:
    """One-parameter sweep request for a radius equation."""

    equation: str
    parameter: str
    grid: tuple[float, ...]
    fixed: dict = field(default_factory=dict)
    output_format: str = "csv"
    output_path: Optional[str] = None

    def __post_init__(self):
        if self.equation not in ("cesaro", "bernardi", "bernardi-classic"):
            raise ValueError(f"unknown equation {self.equation!r}")
        if self.parameter not in ("gamma", "beta"):
            raise ValueError(f"sweep parameter must be gamma or beta, got {self.parameter!r}")
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"output format must be csv or json, got {self.output_format!r}")
        if len(self.grid) == 0:
            raise ValueError("sweep grid must not be empty")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ValueError("sweep grid must be strictly increasing")
        if self.parameter == "gamma" and not all(0.0 <= g < 1.0 for g in self.grid):
            raise ValueError("gamma grid values must lie in [0, 1)")
        if self.parameter == "beta":
            floor = -self.fixed.get("m", 0) if self.equation == "bernardi-classic" else 0.0
            if not all(b > floor for b in self.grid):
                raise ValueError(f"beta grid values must exceed {floor}")


def _thread_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _map_ordered(fn, items):
    """Apply fn to items, optionally in parallel; results keep input order."""
    threads = _thread_count()
    if threads == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _emit(text: str, path: Optional[str]) -> int:
    if path is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {path}: {exc}", file=sys.stderr)
        return EXIT_OUTPUT
    return EXIT_OK


def _json_doc(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True) + "\n"


def _parse_float_list(text: str, flag: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise ValueError(f"{flag} expects a comma-separated list of numbers, got {text!r}")
    return values


def _solve(equation: str, fixed: dict, tol: float) -> RadiusResult:
    if equation == "cesaro":
        return cesaro_radius(DomainGamma(fixed["gamma"]), tol)
    if equation == "bernardi":
        return bernardi_radius(DomainGamma(fixed["gamma"]), fixed["beta"], tol)
    return bernardi_radius_classic(fixed["beta"], fixed["m"], tol)


def _cmd_radius(args) -> int:
    fixed = {"gamma": args.gamma} if args.equation == "cesaro" else (
        {"gamma": args.gamma, "beta": args.beta} if args.equation == "bernardi"
        else {"beta": args.beta, "m": args.m})
    result = _solve(args.equation, fixed, args.tol)
    doc = {
        "equation": args.equation,
        "parameters": {**fixed, "tol": args.tol},
        "radius": result.value,
        "residual": result.residual,
        "iterations": result.iterations,
        "converged": result.converged,
        "version": __version__,
    }
    code = _emit(_json_doc(doc), args.out)
    if code != EXIT_OK:
        return code
    return EXIT_OK if result.converged else EXIT_NUMERIC


def run_sweep(spec: SweepSpec, tol: float = DEFAULT_TOL) -> tuple[int, str]:
    """Solve the radius equation over the grid; returns (exit code, table text)."""

    def solve_point(value: float) -> RadiusResult:
        fixed = dict(spec.fixed)
        fixed[spec.parameter] = value
        return _solve(spec.equation, fixed, tol)

    results = _map_ordered(solve_point, list(spec.grid))
    rows = [
        {spec.parameter: v, "radius": res.value, "residual": res.residual,
         "iterations": res.iterations}
        for v, res in zip(spec.grid, results)
    ]
    if spec.output_format == "json":
        return EXIT_OK, json.dumps(rows, sort_keys=True) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([spec.parameter, "radius", "residual", "iterations"])
    for row in rows:
        writer.writerow([f"{row[spec.parameter]:.17g}", f"{row['radius']:.17g}",
                         f"{row['residual']:.17g}", row["iterations"]])
    return EXIT_OK, buf.getvalue()


def _cmd_sweep(args) -> int:
    fixed = {}
    if args.gamma is not None:
        fixed["gamma"] = args.gamma
    if args.beta is not None:
        fixed["beta"] = args.beta
    if args.equation == "bernardi-classic":
        fixed["m"] = args.m
    try:
        grid = _parse_float_list(args.grid, "--grid")
        spec = SweepSpec(args.equation, args.parameter, tuple(grid), fixed,
                         args.format, args.out)
        needed = {"cesaro": {"gamma"}, "bernardi": {"gamma", "beta"},
                  "bernardi-classic": {"beta", "m"}}[args.equation]
        missing = needed - set(fixed) - {args.parameter}
        if missing:
            raise ValueError(f"missing fixed parameter(s): {', '.join(sorted(missing))}")
        if args.parameter not in needed:
            raise ValueError(f"{args.equation} has no parameter {args.parameter!r}")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    code, text = run_sweep(spec, args.tol)
    if code != EXIT_OK:
        return code
    return _emit(text, spec.output_path)


def _cmd_verify(args) -> int:
    if args.check == "lemma1":
        report = lemma1_check(DomainGamma(args.gamma), args.samples,
                              args.degree_max, args.order, args.seed)
        ok = report.max_ratio <= 1.0 + LEMMA1_TOL
        doc = {
            "check": "lemma1",
            "parameters": {"gamma": args.gamma, "samples": args.samples,
                           "degree_max": args.degree_max, "order": args.order,
                           "seed": args.seed},
            "report": report.as_dict(),
            "tolerance": LEMMA1_TOL,
            "pass": ok,
            "version": __version__,
        }
    elif args.check == "sharpness":
        ladder = tuple(_parse_float_list(args.a_list, "--a-list"))
        if args.op == "cesaro":
            report = sharpness_scan_cesaro(DomainGamma(args.gamma), args.r, ladder)
        else:
            if args.beta is None:
                print("error: --beta is required for --op bernardi", file=sys.stderr)
                return EXIT_USAGE
            report = sharpness_scan_bernardi(DomainGamma(args.gamma), args.beta,
                                             args.r, ladder)
        ok = report.witness_found
        doc = {
            "check": "sharpness",
            "parameters": {"op": args.op, "gamma": args.gamma, "beta": args.beta,
                           "r": args.r, "a_list": list(ladder)},
            "report": report.as_dict(),
            "pass": ok,
            "version": __version__,
        }
    elif args.check == "remainder-order":
        ladder = tuple(_parse_float_list(args.a_list, "--a-list"))
        if args.op == "bernardi" and args.beta is None:
            print("error: --beta is required for --op bernardi", file=sys.stderr)
            return EXIT_USAGE
        slope = remainder_order_check(args.op, DomainGamma(args.gamma), args.r,
                                      ladder, beta=args.beta)
        ok = SLOPE_RANGE[0] <= slope <= SLOPE_RANGE[1]
        doc = {
            "check": "remainder-order",
            "parameters": {"op": args.op, "gamma": args.gamma, "beta": args.beta,
                           "r": args.r, "a_list": list(ladder)},
            "slope": slope,
            "expected_range": list(SLOPE_RANGE),
            "pass": ok,
            "version": __version__,
        }
    else:  # identities
        report = identity_suite()
        ok = report["max_deviation"] <= IDENTITY_TOL
        doc = {
            "check": "identities",
            "report": report,
            "tolerance": IDENTITY_TOL,
            "pass": ok,
            "version": __version__,
        }
    code = _emit(_json_doc(doc), getattr(args, "out", None))
    if code != EXIT_OK:
        return code
    return EXIT_OK if ok else EXIT_ASSERTION


def _format_table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _cmd_table(args) -> int:
    if args.name == "theorem1":
        rows = []
        for k in range(10):
            g = round(0.1 * k, 1)
            res = cesaro_radius(DomainGamma(g))
            rows.append([f"{g:.2f}", f"{res.value:.6f}", f"{res.residual:.1e}"])
        text = _format_table(["gamma", "radius", "residual"], rows)
    elif args.name == "theorem2":
        rows = []
        for g in (0.0, 0.25, 0.5, 0.75):
            for b in (1.0, 2.0, 5.0):
                res = bernardi_radius(DomainGamma(g), b)
                rows.append([f"{g:.2f}", f"{b:.1f}", f"{res.value:.6f}",
                             f"{res.residual:.1e}"])
        text = _format_table(["gamma", "beta", "radius", "residual"], rows)
    else:  # paper-constants
        bohr = bohr_radius_omega(DomainGamma(0.0))
        theorem_b = cesaro_radius(DomainGamma(0.0)).value
        classic = bernardi_radius_classic(1.0, 1).value
        rows = [
            ["bohr gamma=0", f"{bohr:.6f}", "1/3"],
            ["cesaro gamma=0", f"{theorem_b:.6f}", "0.5335"],
            ["bernardi-classic beta=1 m=1", f"{classic:.6f}", "-"],
        ]
        text = _format_table(["quantity", "computed", "reference"], rows)
    return _emit(text, args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bohrkit",
                     description="Bohr-type radii for the Cesaro and Bernardi "
                                 "integral operators on the disks Omega_gamma")
    parser.add_argument("--version", action="version", version=f"bohrkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    radius = sub.add_parser("radius", help="solve one radius equation")
    radius_sub = radius.add_subparsers(dest="equation", required=True)
    p = radius_sub.add_parser("cesaro")
    p.add_argument("--gamma", type=float, required=True)
    p = radius_sub.add_parser("bernardi")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p = radius_sub.add_parser("bernardi-classic")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--m", type=int, required=True)
    for p in radius_sub.choices.values():
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--out", default=None)
        p.set_defaults(handler=_cmd_radius)

    sweep = sub.add_parser("sweep", help="tabulate a radius over a parameter grid")
    sweep.add_argument("--op", dest="equation", required=True,
                       choices=["cesaro", "bernardi", "bernardi-classic"])
    sweep.add_argument("--parameter", required=True, choices=["gamma", "beta"])
    sweep.add_argument("--grid", required=True,
                       help="comma-separated strictly increasing values")
    sweep.add_argument("--gamma", type=float, default=None)
    sweep.add_argument("--beta", type=float, default=None)
    sweep.add_argument("--m", type=int, default=0)
    sweep.add_argument("--format", choices=["csv", "json"], default="csv")
    sweep.add_argument("--tol", type=float, default=DEFAULT_TOL)
    sweep.add_argument("--out", default=None)
    sweep.set_defaults(handler=_cmd_sweep)

    verify = sub.add_parser("verify", help="run a verification suite")
    verify_sub = verify.add_subparsers(dest="check", required=True)
    p = verify_sub.add_parser("lemma1")
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--degree-max", dest="degree_max", type=int, default=8)
    p.add_argument("--order", type=int, default=64)
    p = verify_sub.add_parser("sharpness")
    p.add_argument("--op", required=True, choices=["cesaro", "bernardi"])
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--a-list", dest="a_list",
                   default=",".join(str(a) for a in DEFAULT_WITNESS_LADDER))
    p = verify_sub.add_parser("remainder-order")
    p.add_argument("--op", required=True, choices=["cesaro", "bernardi"])
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--a-list", dest="a_list",
                   default=",".join(str(a) for a in DEFAULT_ORDER_LADDER))
    verify_sub.add_parser("identities")
    for p in verify_sub.choices.values():
        p.add_argument("--out", default=None)
        p.set_defaults(handler=_cmd_verify)

    table = sub.add_parser("table", help="print a reproduction table")
    table.add_argument("name", choices=["theorem1", "theorem2", "paper-constants"])
    table.add_argument("--out", default=None)
    table.set_defaults(handler=_cmd_table)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.handler(args)
    except ValueError as exc:
        # DomainError and PreconditionError subclass ValueError.
        if isinstance(exc, (DomainError, PreconditionError)):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_DOMAIN
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericalError, BracketingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
