"""Command-line entry point: spectra, classification, wavefunctions, verification.

Exit codes: 0 success, 1 invalid flags, 2 no bound state, 3 a requested check failed.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from .angular import verify_all_angular
from .checks import DEFAULT_SWEEP, sweep_channels, verify_radial, verify_susy
from .errors import BoundaryUnphysical, ConfigurationError, DomainError, NoBoundState
from .model import (Channel, DeformationParams, Regime, classify, parse_s,
                    regime_inequalities, spectrum_entry, spectrum_table)
from .oracle import GridSpec, verify_spectrum
from .quadrature import QuadratureSpec, default_order
from .report import VerificationReport
from .wavefunctions import RadialState, sample

SCHEMA = 1
EXIT_OK, EXIT_USAGE, EXIT_NO_BOUND_STATE, EXIT_CHECK_FAILED = 0, 1, 2, 3
FLOAT_FMT = "%.12e"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad flags; 2 is reserved for NoBoundState here
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _fmt(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return FLOAT_FMT % x


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON with every float written as %.12e."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt(float(obj))
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    return json.dumps(str(obj))


def _csv_cell(v):
    if isinstance(v, (float, np.floating)):
        return _fmt(float(v))
    return str(v)


def to_csv(config: dict, columns: list, rows: list) -> str:
    buf = io.StringIO()
    buf.write(f"# schema: {SCHEMA}\n")
    for k, v in config.items():
        buf.write(f"# {k}: {_csv_cell(v)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_csv_cell(row[c]) for c in columns])
    return buf.getvalue()


def _s_flag(text):
    if text not in ("+", "-"):
        raise argparse.ArgumentTypeError("s must be '+' or '-'")
    return parse_s(text)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--omega", type=float, default=1.0)
    common.add_argument("--beta", type=float, default=0.01)
    common.add_argument("--beta-prime", type=float, default=0.01)
    common.add_argument("--gamma", type=float, default=0.0)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", default="-", help="file path, '-' for stdout")

    def channel_flags(p, required=False):
        p.add_argument("--two-j", type=int, required=required, help="2j, an odd positive integer")
        p.add_argument("--s", type=_s_flag, required=required, help="'+' or '-'")

    parser = _Parser(prog="ddo", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", parents=[common], help="closed-form energy table")
    channel_flags(p)
    p.add_argument("--two-j-max", type=int, default=3)
    p.add_argument("--n-max", type=int, default=2)

    p = sub.add_parser("classify", parents=[common], help="regime of each (s, j) channel")
    channel_flags(p)
    p.add_argument("--two-j-max", type=int, default=3)

    p = sub.add_parser("wavefunction", parents=[common], help="sample R1, R2tilde, R2")
    channel_flags(p, required=True)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--sigma", type=int, choices=(1, -1), default=1)
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--p-min", type=float, default=None, help="default 1e-2/sqrt(beta0)")
    p.add_argument("--p-max", type=float, default=None, help="default 1e2/sqrt(beta0)")

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    for scope in ("radial", "angular", "susy", "all"):
        p.add_argument(f"--{scope}", action="store_true")
    p.add_argument("--tol", type=float, default=1e-4, help="oracle eigenvalue tolerance")
    p.add_argument("--quad-order", type=int, default=None)
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--two-j-max", type=int, default=7, help="angular sweep bound")
    p.add_argument("--samples", type=int, default=100, help="angular directions per harmonic")

    p = sub.add_parser("oracle", parents=[common], help="grid diagonalization of one channel")
    channel_flags(p, required=True)
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--tol", type=float, default=1e-4)
    p.add_argument("--grid-size", type=int, default=1000)
    p.add_argument("--fd-order", type=int, choices=(2, 4), default=2)
    p.add_argument("--no-richardson", action="store_true")
    return parser


def _params(args) -> DeformationParams:
    return DeformationParams(args.omega, args.beta, args.beta_prime, args.gamma)


def _resolve_defaults(args):
    """Fill defaults that depend on other flags, so the echoed config is complete."""
    if getattr(args, "quad_order", "unset") is None:
        args.quad_order = default_order()
    if args.command == "wavefunction":
        scale = 1.0 / math.sqrt(_params(args).beta0)
        if args.p_min is None:
            args.p_min = 1e-2 * scale
        if args.p_max is None:
            args.p_max = 1e2 * scale


def _config(args) -> dict:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in ("output", "format")}
    cfg["format"] = args.format
    if cfg.get("s") is not None:
        cfg["s"] = "+" if cfg["s"] > 0 else "-"
    return cfg


def _entry_row(e) -> dict:
    return {"n": e.n, "N": e.N, "two_s": e.two_s, "two_j": e.two_j, "sigma": e.sigma,
            "regime": str(e.regime), "e": e.e, "E2m1": e.e2m1, "E": e.E}


def _inequality_text(two_s, two_j, params) -> dict:
    return {k: float(v) for k, v in regime_inequalities(two_s, two_j, params).items()}


def cmd_spectrum(args):
    params = _params(args)
    if args.two_j is not None or args.s is not None:
        if args.two_j is None or args.s is None:
            raise UsageError("--two-j and --s must be given together")
        ch = Channel(args.s, args.two_j, params)
        if ch.regime is Regime.INTERMEDIATE_J:
            raise NoBoundState(ch.no_bound_state_message(),
                               _inequality_text(args.s, args.two_j, params))
        rows = [_entry_row(spectrum_entry(n, sigma, ch))
                for sigma in (1, -1) for n in range(ch.min_n[sigma], args.n_max + 1)]
        extra = {}
    else:
        table = spectrum_table(params, args.two_j_max, args.n_max)
        rows = [_entry_row(e) for e in table.entries]
        extra = {"no_bound_state": [{"two_s": s, "two_j": j} for s, j in table.no_bound_state],
                 "boundary": [{"two_s": s, "two_j": j} for s, j in table.boundary]}
    columns = ["n", "N", "two_s", "two_j", "sigma", "regime", "e", "E2m1", "E"]
    return EXIT_OK, {"rows": rows, **extra}, columns


def cmd_classify(args):
    params = _params(args)
    if args.two_j is not None:
        channels = [(args.s if args.s is not None else 1, args.two_j)]
        if args.s is None:
            channels.append((-1, args.two_j))
    else:
        channels = [(s, j) for j in range(1, args.two_j_max + 1, 2) for s in (1, -1)]
    rows = []
    for two_s, two_j in channels:
        q = regime_inequalities(two_s, two_j, params)
        try:
            regime = str(classify(two_s, two_j, params))
        except BoundaryUnphysical:
            regime = "Boundary"
        rows.append({"two_s": two_s, "two_j": two_j, "regime": regime,
                     "small_lhs": q["small_lhs"], "very_large_lhs": q["very_large_lhs"],
                     "threshold": q["threshold"]})
    columns = ["two_s", "two_j", "regime", "small_lhs", "very_large_lhs", "threshold"]
    return EXIT_OK, {"rows": rows}, columns


def cmd_wavefunction(args):
    params = _params(args)
    ch = Channel(args.s, args.two_j, params)
    if ch.regime is Regime.INTERMEDIATE_J:
        raise NoBoundState(ch.no_bound_state_message(),
                           _inequality_text(args.s, args.two_j, params))
    state = RadialState(ch, args.n, args.sigma)
    if not 0 < args.p_min < args.p_max or args.points < 2:
        raise UsageError("need 0 < p-min < p-max and at least 2 points")
    data = sample(state, np.geomspace(args.p_min, args.p_max, args.points))
    columns = ["p", "z", "R1", "R2tilde", "R2", "weight"]
    rows = [{c: float(data[c][i]) for c in columns} for i in range(args.points)]
    info = {k: (float(v) if isinstance(v, float) else v) for k, v in state.describe().items()}
    return EXIT_OK, {"state": info, "rows": rows}, columns


def _report_rows(reports):
    rows = []
    for r in reports:
        for c in r.checks:
            rows.append({"report": r.name, "check": c.name, "value": c.value,
                         "tol": c.tol, "passed": c.passed})
    return rows


def cmd_verify(args):
    scopes = [s for s in ("radial", "susy", "angular") if getattr(args, s) or args.all]
    if not scopes:
        raise UsageError("choose at least one of --radial --susy --angular --all")
    reports: list[VerificationReport] = []
    channels = sweep_channels()
    if "radial" in scopes:
        for ch in channels:
            spec = QuadratureSpec(ch.params.beta0, args.quad_order)
            reports.append(verify_radial(ch, args.n_max, spec=spec))
    if "susy" in scopes:
        for ch in channels:
            reports.append(verify_susy(ch, n_max=5, tol=args.tol))
    if "angular" in scopes:
        reports.append(verify_all_angular(args.two_j_max, args.samples))
    passed = all(r.passed for r in reports)
    payload = {"passed": passed,
               "sweep": [dict(zip(("omega", "beta", "beta_prime", "two_s", "two_j"), row))
                         for row in DEFAULT_SWEEP],
               "reports": [r.to_dict() for r in reports]}
    payload["rows"] = _report_rows(reports)
    return (EXIT_OK if passed else EXIT_CHECK_FAILED), payload, ["report", "check", "value", "tol", "passed"]


def cmd_oracle(args):
    params = _params(args)
    ch = Channel(args.s, args.two_j, params)
    if ch.regime is Regime.INTERMEDIATE_J:
        raise NoBoundState(ch.no_bound_state_message(),
                           _inequality_text(args.s, args.two_j, params))
    grid = GridSpec(args.grid_size, fd_order=args.fd_order, richardson=not args.no_richardson)
    report = verify_spectrum(ch, args.n_max, args.tol, grid)
    payload = {"passed": report.passed, "reports": [report.to_dict()],
               "rows": _report_rows([report])}
    return (EXIT_OK if report.passed else EXIT_CHECK_FAILED), payload, ["report", "check", "value", "tol", "passed"]


COMMANDS = {"spectrum": cmd_spectrum, "classify": cmd_classify, "wavefunction": cmd_wavefunction,
            "verify": cmd_verify, "oracle": cmd_oracle}


def _emit(text: str, path: str):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _resolve_defaults(args)
        config = _config(args)
        code, payload, columns = COMMANDS[args.command](args)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except NoBoundState as exc:
        sys.stderr.write(f"NoBoundState: {exc}\n")
        _emit(dumps({"schema": SCHEMA, "command": args.command, "config": config,
                     "error": "NoBoundState", "message": str(exc),
                     "inequalities": exc.inequalities}) + "\n", args.output)
        return EXIT_NO_BOUND_STATE
    except BoundaryUnphysical as exc:
        sys.stderr.write(f"BoundaryUnphysical: {exc}\n")
        return EXIT_NO_BOUND_STATE
    except (DomainError, ConfigurationError) as exc:
        sys.stderr.write(f"invalid input: {exc}\n")
        return EXIT_USAGE

    if args.format == "csv":
        text = to_csv(config, columns, payload["rows"])
    else:
        text = dumps({"schema": SCHEMA, "command": args.command, "config": config, **payload}) + "\n"
    _emit(text, args.output)
    return code


def main():
    sys.exit(run())
