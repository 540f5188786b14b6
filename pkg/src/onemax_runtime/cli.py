"""Command-line interface.

Six subcommands cover the library end to end:

* ``drift``    exact drift table of one problem size,
* ``runtime``  exact expected runtime from one start, with the corridor,
* ``bounds``   the full inequality verification report,
* ``asym``     expansion values and closed-form runtime estimates,
* ``figures``  the two standard diagnostic grids as flat tables,
* ``sim``      Monte Carlo runs of the actual algorithm.

Tables go to stdout (or ``--out``) as CSV or JSON; diagnostics go to stderr.
Exit status: 0 on success, 2 on usage or domain errors (including rational
capacity), 1 on numeric failures. Output for a fixed command line is
byte-identical across runs. Rational values render as "p/q" in CSV and as
{"num": p, "den": q} objects in JSON; floats render with ``--precision``
significant digits (default 15).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

from .asymptotics import (
    expansion_delta_star,
    figure1_rows,
    figure2_rows,
    runtime_estimate,
)
from .backends import BACKENDS, FLOAT, CapacityError, NumericError
from .bounds import verify_inequalities
from .drift import build_drift_table, normalized_drift
from .hitting import CORRIDOR_C1, CORRIDOR_C2, runtime_profile
from .simulate import ENGINE_STATECHAIN, ENGINES, UNIFORM_START, SimConfig, run

__all__ = ["main"]


def _fmt_cell(value, precision: int) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return format(value, f".{precision}g")
    return str(value)


def _json_value(value, precision: int):
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, Fraction):
        return {"num": value.numerator, "den": value.denominator}
    if isinstance(value, float):
        return float(format(value, f".{precision}g"))
    return value


def _emit_table(columns, rows, args) -> None:
    if args.format == "json":
        payload = [
            {c: _json_value(v, args.precision) for c, v in zip(columns, row)}
            for row in rows
        ]
        text = json.dumps(payload, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt_cell(v, args.precision) for v in row])
        text = buf.getvalue()
    _write_out(text, args.out)


def _emit_object(obj, args) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    _write_out(text, args.out)


def _write_out(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _cmd_drift(args) -> None:
    table = build_drift_table(args.n, args.backend)
    n = args.n
    rows = []
    for k in range(n + 1):
        rows.append(
            (
                k,
                table.delta[k],
                table.delta_star[k],
                k / (math.e * n),
                k / n,
            )
        )
    _emit_table(("k", "delta", "delta_star", "lower_bound", "upper_bound"), rows, args)


def _cmd_runtime(args) -> None:
    n = args.n
    start = args.start if args.start is not None else n // 2
    if not 0 <= start <= n:
        raise ValueError(f"start {start} outside [0, {n}]")
    prof = runtime_profile(n, args.backend, up_to=start)
    g = prof.g[start]
    q = prof.q[start]
    logn = math.log(n)
    lo = float(q) - CORRIDOR_C1 * logn
    hi = float(q) - CORRIDOR_C2 * logn
    in_corridor = lo <= float(g) <= hi
    rows = [(n, start, g, q, lo, hi, in_corridor)]
    _emit_table(
        (
            "n",
            "k",
            "g_exact",
            "q_sum",
            "q_minus_c1_logn",
            "q_minus_c2_logn",
            "in_corridor",
        ),
        rows,
        args,
    )


def _cmd_bounds(args) -> None:
    report = verify_inequalities(args.n, args.backend)
    if args.format == "csv":
        rows = [
            (
                rec.check_id,
                rec.k_lo,
                rec.k_hi,
                rec.direction,
                rec.bound,
                rec.observed,
                rec.passed,
                rec.applicable,
            )
            for rec in report.checks
        ]
        _emit_table(
            (
                "check_id",
                "k_lo",
                "k_hi",
                "direction",
                "bound",
                "observed",
                "pass",
                "applicable",
            ),
            rows,
            args,
        )
        return
    obj = {
        "n": report.n,
        "backend": report.backend,
        "eta_star_max": _json_value(float(report.eta_star_max), args.precision),
        "eta_star_min": _json_value(float(report.eta_star_min), args.precision),
        "checks": [
            {
                "check_id": rec.check_id,
                "range": [rec.k_lo, rec.k_hi],
                "direction": rec.direction,
                "bound": _json_value(rec.bound, args.precision),
                "observed": _json_value(rec.observed, args.precision),
                "pass": rec.passed,
                "applicable": rec.applicable,
            }
            for rec in report.checks
        ],
    }
    _emit_object(obj, args)


def _cmd_asym(args) -> None:
    eps = Fraction(args.eps)
    rows = []
    for n in args.n:
        est = runtime_estimate(n)
        k_hi = math.floor((1 - eps) * n)
        if k_hi < 1:
            raise ValueError(f"eps = {eps} leaves no valid state for n = {n}")
        for k in range(1, k_hi + 1):
            exact = normalized_drift(n, k)
            approx = expansion_delta_star(n, k, order=args.order, eps=eps)
            rows.append(
                (
                    n,
                    k,
                    k / n,
                    exact,
                    approx,
                    abs(exact - approx),
                    est.q_asym,
                    est.et_asym,
                )
            )
    _emit_table(
        (
            "n",
            "k",
            "alpha",
            "delta_star_exact",
            "approx",
            "abs_err",
            "q_asym",
            "et_asym",
        ),
        rows,
        args,
    )


def _parse_range(spec: str) -> tuple[int, int]:
    parts = spec.split(":")
    if len(parts) != 2:
        raise ValueError(f"size range must look like LO:HI, got {spec!r}")
    lo, hi = int(parts[0]), int(parts[1])
    if lo < 2 or hi < lo:
        raise ValueError(f"size range {spec!r} must satisfy 2 <= LO <= HI")
    return lo, hi


def _cmd_figures(args) -> None:
    lo, hi = _parse_range(args.n_range)
    if args.which == 1:
        rows = figure1_rows(lo, hi, threads=args.threads)
        columns = (
            "n",
            "k",
            "alpha",
            "delta_star_exact",
            "approx0",
            "approx1",
            "approx2",
            "err0",
            "err1",
            "err2",
            "inv_err0",
            "inv_err1",
            "inv_err2",
        )
    else:
        rows = figure2_rows(lo, hi, threads=args.threads)
        columns = ("n", "q_exact", "g_exact", "diff", "diff_minus_half_e_log")
    _emit_table(columns, rows, args)


def _parse_start(spec: str):
    if spec == UNIFORM_START:
        return UNIFORM_START
    if spec.startswith("fixed:"):
        return int(spec.split(":", 1)[1])
    raise ValueError(f"start must be 'uniform' or 'fixed:K', got {spec!r}")


def _cmd_sim(args) -> None:
    config = SimConfig(
        n=args.n,
        start=_parse_start(args.start),
        replicates=args.reps,
        seed=args.seed,
        engine=args.engine,
        max_iters=args.max_iters,
    )
    stats, samples = run(config, threads=args.threads)
    if args.samples_out is not None:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(("replicate", "iterations"))
        for i, t in enumerate(samples):
            writer.writerow((i, int(t)))
        with open(args.samples_out, "w") as fh:
            fh.write(buf.getvalue())
    obj = {
        "n": config.n,
        "start": args.start,
        "engine": config.engine,
        "samples": stats.samples,
        "mean": _json_value(stats.mean, args.precision),
        "std_error": _json_value(stats.std_error, args.precision),
        "min": stats.min,
        "max": stats.max,
        "truncated": stats.truncated,
        "seed": config.seed,
    }
    _emit_object(obj, args)


def _add_output_options(sp, default_format: str) -> None:
    sp.add_argument("--out", metavar="PATH", default=None, help="write to PATH instead of stdout")
    sp.add_argument(
        "--format", choices=("csv", "json"), default=default_format,
        help=f"output format (default {default_format})",
    )
    sp.add_argument(
        "--precision", type=int, default=15, metavar="N",
        help="significant digits for float rendering (default 15)",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="onemax-runtime",
        description="Expected optimization time of the (1+1) EA on OneMax: "
        "exact values, proved bounds, asymptotics and simulation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("drift", help="drift table for one problem size")
    p.add_argument("n", type=int)
    p.add_argument("--backend", choices=BACKENDS, default=FLOAT)
    _add_output_options(p, "csv")
    p.set_defaults(handler=_cmd_drift)

    p = sub.add_parser("runtime", help="exact expected runtime from one start")
    p.add_argument("n", type=int)
    p.add_argument(
        "--start", type=int, default=None, metavar="K",
        help="start state in zero bits (default: floor(n/2))",
    )
    p.add_argument("--backend", choices=BACKENDS, default=FLOAT)
    _add_output_options(p, "csv")
    p.set_defaults(handler=_cmd_runtime)

    p = sub.add_parser("bounds", help="verify the inequality suite at one n")
    p.add_argument("n", type=int)
    p.add_argument("--backend", choices=BACKENDS, default=FLOAT)
    _add_output_options(p, "json")
    p.set_defaults(handler=_cmd_bounds)

    p = sub.add_parser("asym", help="expansion values and runtime estimates")
    p.add_argument("n", type=int, nargs="+")
    p.add_argument("--order", type=int, choices=(0, 1, 2), default=2)
    p.add_argument(
        "--eps", default="1/8", metavar="RATIONAL",
        help="validity threshold: expansion applies for k <= (1-eps) n (default 1/8)",
    )
    _add_output_options(p, "csv")
    p.set_defaults(handler=_cmd_asym)

    p = sub.add_parser("figures", help="diagnostic grids as flat tables")
    p.add_argument("--which", type=int, choices=(1, 2), required=True)
    p.add_argument("--n-range", required=True, metavar="LO:HI")
    p.add_argument("--threads", type=int, default=None, metavar="N")
    _add_output_options(p, "csv")
    p.set_defaults(handler=_cmd_figures)

    p = sub.add_parser("sim", help="Monte Carlo runs of the algorithm")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--start", default=UNIFORM_START, metavar="fixed:K|uniform")
    p.add_argument("--reps", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--engine", choices=ENGINES, default=ENGINE_STATECHAIN)
    p.add_argument("--max-iters", type=int, default=None)
    p.add_argument("--threads", type=int, default=None, metavar="N")
    p.add_argument(
        "--samples-out", metavar="PATH", default=None,
        help="also write per-replicate hitting times as CSV to PATH",
    )
    _add_output_options(p, "json")
    p.set_defaults(handler=_cmd_sim)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        args.handler(args)
    except NumericError as exc:
        print(f"onemax-runtime: numeric error: {exc}", file=sys.stderr)
        return 1
    except (CapacityError, ValueError) as exc:
        print(f"onemax-runtime: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"onemax-runtime: i/o error: {exc}", file=sys.stderr)
        return 1
    return 0
