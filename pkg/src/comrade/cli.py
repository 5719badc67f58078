"""Command-line front end: polynomial zeros and experiment data as CSV/JSON.

Subcommands: zeros, timing, accuracy, separation, growth, spectrum.
Exit codes: 0 success, 2 invalid configuration, 3 solver
non-convergence (partial output where meaningful), 4 refused slow run.

Output is deterministic for a fixed configuration (timing excepted):
floats are printed with the shortest round-trip representation and grid
rows are sorted by their key columns regardless of worker scheduling.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .experiments import (
    RefusedSlowRun,
    _zeros_rows_from_spectrum,
    accuracy_rows,
    growth_rows,
    separation_rows,
    spectrum_rows,
    timing_rows,
    zeros_rows,
)
from .recurrence import DegenerateRecurrenceError
from .solver import NonConvergenceError


def _parse_range(text: str):
    """start:step:stop, inclusive of stop up to half-step rounding."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(
            f"range {text!r} must look like start:step:stop")
    try:
        start, step, stop = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"range {text!r} has non-numeric parts")
    if step <= 0.0:
        raise argparse.ArgumentTypeError("range step must be > 0")
    if stop < start:
        raise argparse.ArgumentTypeError("range stop must be >= start")
    count = int((stop - start) / step + 1e-9) + 1
    values = [start + i * step for i in range(count)]
    if not values:
        raise argparse.ArgumentTypeError("range is empty")
    return values


def _parse_n_list(text: str):
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"n list {text!r} must be comma-separated integers")
    if not values or any(n < 1 for n in values):
        raise argparse.ArgumentTypeError("n list must contain positive integers")
    return values


def _format_value(v) -> str:
    if isinstance(v, np.generic):
        v = v.item()
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _json_default(v):
    if isinstance(v, np.generic):
        return v.item()
    return str(v)


def _render(header, rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, default=_json_default, indent=2) + "\n"
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_format_value(row[k]) for k in header))
    return "\n".join(lines) + "\n"


def _emit(args, header, rows) -> None:
    text = _render(header, rows, args.format)
    if args.out is None or args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)


def _resolve_threads(args) -> int:
    if args.threads is not None:
        if args.threads < 1:
            raise ValueError("--threads must be >= 1")
        return args.threads
    env = os.environ.get("COMRADE_THREADS")
    if env:
        try:
            value = int(env)
        except ValueError:
            raise ValueError(f"COMRADE_THREADS={env!r} is not an integer")
        if value < 1:
            raise ValueError("COMRADE_THREADS must be >= 1")
        return value
    return os.cpu_count() or 1


def _require(args, *names):
    for name in names:
        if getattr(args, name, None) is None:
            raise ValueError(f"--{name.replace('_', '-')} is required for this command")


def _alpha_grid(args):
    if args.alpha_range is not None:
        return args.alpha_range
    if args.alpha is not None:
        return [args.alpha]
    raise ValueError("need --alpha or --alpha-range")


def _kappa_grid(args):
    if args.kappa_range is not None:
        return args.kappa_range
    if args.kappa is not None:
        return [args.kappa]
    raise ValueError("need --kappa or --kappa-range")


def _cmd_zeros(args) -> int:
    _require(args, "n", "alpha", "kappa")
    try:
        header, rows = zeros_rows(args.n, args.alpha, args.kappa, args.algorithm,
                                  args.tol, args.balance)
    except NonConvergenceError as err:
        header, rows = _zeros_rows_from_spectrum(err.converged, args.n,
                                                 args.alpha, args.kappa)
        _emit(args, header, rows)
        print(f"warning: {err}; wrote {len(rows)} converged zeros", file=sys.stderr)
        return 3
    _emit(args, header, rows)
    return 0


def _cmd_timing(args) -> int:
    _require(args, "n_list")
    alpha = args.alpha if args.alpha is not None else 0.5
    kappa = args.kappa if args.kappa is not None else 0.5
    header, rows = timing_rows(args.n_list, alpha, kappa)
    _emit(args, header, rows)
    return 0


def _cmd_accuracy(args) -> int:
    _require(args, "n")
    header, rows = accuracy_rows(args.n, _alpha_grid(args),
                                 allow_slow=args.allow_slow,
                                 threads=_resolve_threads(args))
    _emit(args, header, rows)
    return 0


def _cmd_separation(args) -> int:
    _require(args, "n")
    header, rows = separation_rows(args.n, _alpha_grid(args), args.algorithm,
                                   threads=_resolve_threads(args))
    _emit(args, header, rows)
    return 0


def _cmd_growth(args) -> int:
    _require(args, "n_list")
    header, rows = growth_rows(args.n_list, _alpha_grid(args), _kappa_grid(args),
                               args.algorithm, threads=_resolve_threads(args))
    _emit(args, header, rows)
    return 0


def _cmd_spectrum(args) -> int:
    _require(args, "n", "alpha", "kappa")
    header, rows = spectrum_rows(args.n, args.alpha, args.kappa, args.algorithm,
                                 args.tol, args.balance)
    _emit(args, header, rows)
    return 0


_HANDLERS = {
    "zeros": _cmd_zeros,
    "timing": _cmd_timing,
    "accuracy": _cmd_accuracy,
    "separation": _cmd_separation,
    "growth": _cmd_growth,
    "spectrum": _cmd_spectrum,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="polynomial degree")
    common.add_argument("--n-list", type=_parse_n_list, dest="n_list",
                        help="comma-separated degrees, e.g. 100,200,400")
    common.add_argument("--alpha", type=float)
    common.add_argument("--kappa", type=float)
    common.add_argument("--alpha-range", type=_parse_range, dest="alpha_range",
                        metavar="START:STEP:STOP")
    common.add_argument("--kappa-range", type=_parse_range, dest="kappa_range",
                        metavar="START:STEP:STOP")
    common.add_argument("--algorithm", choices=["fast", "dense", "dense-dd"],
                        default="fast")
    common.add_argument("--tol", type=float, help="deflation tolerance")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--threads", type=int,
                        help="worker processes for grid sweeps "
                             "(default: COMRADE_THREADS or CPU count)")
    common.add_argument("--allow-slow", action="store_true", dest="allow_slow",
                        help="permit long double-double oracle runs")
    common.add_argument("--balance", action="store_true",
                        help="balance before reduction (dense algorithms only)")

    parser = argparse.ArgumentParser(
        prog="comrade",
        description="zeros of the 2F2(-n,1;a+1,k+1;x) polynomial family "
                    "via structured QR on the comrade matrix")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("zeros", parents=[common],
                   help="all zeros of one polynomial, with residuals")
    sub.add_parser("timing", parents=[common],
                   help="median solve times, fast vs dense")
    sub.add_parser("accuracy", parents=[common],
                   help="errors vs the double-double oracle, with bounds")
    sub.add_parser("separation", parents=[common],
                   help="all-real to some-complex boundary in kappa")
    sub.add_parser("growth", parents=[common],
                   help="spectrum extent statistics over an (n, alpha, kappa) grid")
    sub.add_parser("spectrum", parents=[common],
                   help="re,im scatter of one spectrum")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.tol is not None and args.tol <= 0.0:
            raise ValueError("--tol must be > 0")
        if args.threads is not None and args.threads < 1:
            raise ValueError("--threads must be >= 1")
        if args.balance and args.algorithm == "fast":
            raise ValueError("--balance applies to dense algorithms only")
        return _HANDLERS[args.command](args)
    except RefusedSlowRun as err:
        print(f"error: {err}", file=sys.stderr)
        return 4
    except NonConvergenceError as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    except (ValueError, DegenerateRecurrenceError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
