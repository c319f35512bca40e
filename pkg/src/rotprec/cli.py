"""Command-line front end.

Subcommands: ``wit``, ``swipt``, ``region``, ``multicast``, ``baseline``.
Each reads a channel file (see :mod:`rotprec.channel_io`), solves, and
emits either a plain-text table or a JSON document (``--format
structured``).  All floating-point output is rounded to 12 significant
digits and every run is deterministic for a fixed ``--seed``.

Exit codes: 0 success, 2 malformed file or arguments, 3 inconsistent
dimensions, 4 solver non-convergence.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .analytic import energy_of, rate_of, wit_capacity
from .channel_io import ChannelDimensionError, ChannelFormatError, load_channel_set
from .evaluation import swipt_trial_cloud
from .multicast import MulticastProblem, multicast_solve
from .optimizer import OptimizerConfig
from .swipt import SwiptProblem, energy_bounds, rate_energy_region, swipt_solve

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DIMENSION = 3
EXIT_NO_CONVERGENCE = 4


def _sig12(x: float) -> float:
    return float(f"{float(x):.12g}")


def _round_doc(obj):
    if isinstance(obj, float):
        return _sig12(obj)
    if isinstance(obj, dict):
        return {k: _round_doc(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_doc(v) for v in obj]
    return obj


def _matrix_doc(q: np.ndarray) -> list:
    return [[[float(v.real), float(v.imag)] for v in row] for row in q]


def _matrix_lines(q: np.ndarray) -> list[str]:
    return [
        "  " + "  ".join(f"{v.real:.12g}{v.imag:+.12g}j" for v in row) for row in q
    ]


def _solver_doc(report) -> dict:
    return {
        "objective": float(report.objective),
        "iterations": report.iterations_used,
        "restarts": report.restarts_used,
        "converged": report.converged,
        "max_constraint_violation": float(
            report.constraint_residuals.max(initial=0.0)
        ),
    }


def _emit(doc: dict, table_lines: list[str], args) -> None:
    if args.format == "structured":
        text = json.dumps(_round_doc(doc), indent=2) + "\n"
    else:
        text = "\n".join(table_lines) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config(args) -> OptimizerConfig:
    return OptimizerConfig(
        max_iterations=args.max_iters,
        convergence_tol=args.tol,
        restarts=args.restarts,
        rng_seed=args.seed,
    )


def _cmd_wit(args) -> int:
    channels = load_channel_set(args.channel_file, args.power)
    sol = wit_capacity(channels.channels[0], channels.power)
    doc = {
        "command": "wit",
        "m": channels.m,
        "power": channels.power,
        "rate": sol.rate,
        "active_modes": sol.active_modes,
        "covariance": _matrix_doc(sol.covariance),
    }
    lines = [
        f"rate          {sol.rate:.12g}",
        f"active_modes  {sol.active_modes}",
        "covariance",
        *_matrix_lines(sol.covariance),
    ]
    _emit(doc, lines, args)
    return EXIT_OK


def _cmd_swipt(args) -> int:
    channels = load_channel_set(args.channel_file, args.power)
    if channels.num_users < 2:
        raise ChannelDimensionError(
            "the trade-off needs two channels: information then energy"
        )
    point = swipt_solve(SwiptProblem(channels, args.q, _config(args)))
    e_min, e_max = energy_bounds(channels)
    e_bar = e_min + args.q * (e_max - e_min)
    doc = {
        "command": "swipt",
        "q": args.q,
        "power": channels.power,
        "rate": point.rate,
        "energy": point.energy,
        "energy_floor": e_bar,
        "energy_min": e_min,
        "energy_max": e_max,
        "threshold_clamped": point.threshold_clamped,
        "covariance": _matrix_doc(point.covariance),
    }
    lines = [
        f"q             {args.q:.12g}",
        f"rate          {point.rate:.12g}",
        f"energy        {point.energy:.12g}",
        f"energy_floor  {e_bar:.12g}",
        f"energy_min    {e_min:.12g}",
        f"energy_max    {e_max:.12g}",
    ]
    if point.report is not None:
        doc["solver"] = _solver_doc(point.report)
        lines.append(f"converged     {point.report.converged}")
    lines += ["covariance", *_matrix_lines(point.covariance)]
    _emit(doc, lines, args)
    if point.report is not None and not point.report.converged:
        return EXIT_NO_CONVERGENCE
    return EXIT_OK


def _cmd_region(args) -> int:
    channels = load_channel_set(args.channel_file, args.power)
    if channels.num_users < 2:
        raise ChannelDimensionError(
            "the trade-off needs two channels: information then energy"
        )
    points = rate_energy_region(channels, args.points, _config(args))
    e_min, e_max = energy_bounds(channels)
    rows = [
        {
            "q": p.q,
            "energy_floor": e_min + p.q * (e_max - e_min),
            "rate": p.rate,
            "energy": p.energy,
        }
        for p in points
    ]
    doc = {
        "command": "region",
        "power": channels.power,
        "points": args.points,
        "energy_min": e_min,
        "energy_max": e_max,
        "rows": rows,
    }
    header = f"{'q':>14}  {'energy_floor':>16}  {'rate':>16}  {'energy':>16}"
    lines = [header] + [
        f"{r['q']:>14.12g}  {r['energy_floor']:>16.12g}  "
        f"{r['rate']:>16.12g}  {r['energy']:>16.12g}"
        for r in rows
    ]
    _emit(doc, lines, args)
    bad = any(
        p.report is not None and not p.report.converged for p in points
    )
    return EXIT_NO_CONVERGENCE if bad else EXIT_OK


def _cmd_multicast(args) -> int:
    channels = load_channel_set(args.channel_file, args.power)
    if channels.num_users < 2:
        raise ChannelDimensionError("multicasting needs at least two channels")
    sol = multicast_solve(MulticastProblem(channels, _config(args)))
    doc = {
        "command": "multicast",
        "power": channels.power,
        "users": channels.num_users,
        "rate": sol.rate,
        "per_user_rates": [float(r) for r in sol.per_user_rates],
        "sub_case": sol.sub_case,
        "covariance": _matrix_doc(sol.covariance),
    }
    lines = [
        f"rate          {sol.rate:.12g}",
        "per_user      " + "  ".join(f"{r:.12g}" for r in sol.per_user_rates),
        f"sub_case      {sol.sub_case}",
    ]
    if sol.report is not None:
        doc["solver"] = _solver_doc(sol.report)
        lines.append(f"converged     {sol.report.converged}")
    lines += ["covariance", *_matrix_lines(sol.covariance)]
    _emit(doc, lines, args)
    if sol.report is not None and not sol.report.converged:
        return EXIT_NO_CONVERGENCE
    return EXIT_OK


def _cmd_baseline(args) -> int:
    channels = load_channel_set(args.channel_file, args.power)
    cloud = swipt_trial_cloud(
        channels if channels.num_users >= 2 else _duplicated(channels),
        args.trials,
        args.seed,
    )
    rows = [{"rate": float(r), "energy": float(e)} for r, e in cloud.points]
    doc = {
        "command": "baseline",
        "power": channels.power,
        "trials": args.trials,
        "seed": args.seed,
        "rows": rows,
    }
    header = f"{'rate':>16}  {'energy':>16}"
    lines = [header] + [
        f"{r['rate']:>16.12g}  {r['energy']:>16.12g}" for r in rows
    ]
    _emit(doc, lines, args)
    return EXIT_OK


def _duplicated(channels):
    from .analytic import ChannelSet

    return ChannelSet(
        (channels.channels[0], channels.channels[0]), channels.power, channels.eta
    )


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("channel_file", help="JSON channel file")
    sub.add_argument("--power", type=float, default=None,
                     help="override the file's power budget (watts)")
    sub.add_argument("--seed", type=int, default=0, help="RNG seed")
    sub.add_argument("--restarts", type=int, default=8,
                     help="optimizer multi-starts")
    sub.add_argument("--max-iters", type=int, default=500,
                     help="optimizer iteration budget per stage")
    sub.add_argument("--tol", type=float, default=1e-8,
                     help="objective convergence tolerance")
    sub.add_argument("--output", default=None, help="write the result here")
    sub.add_argument("--format", choices=("table", "structured"),
                     default="table", help="output format")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rotprec",
        description="Rotation-parameterized MIMO covariance design",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("wit", help="capacity of the first channel")
    _add_common(p)

    p = subs.add_parser("swipt", help="rate under an energy floor")
    _add_common(p)
    p.add_argument("--q", type=float, required=True,
                   help="threshold fraction in [0, 1]")

    p = subs.add_parser("region", help="rate-energy boundary sweep")
    _add_common(p)
    p.add_argument("--points", type=int, default=11,
                   help="number of sweep thresholds (>= 2)")

    p = subs.add_parser("multicast", help="max-min common rate")
    _add_common(p)

    p = subs.add_parser("baseline", help="random-covariance trial cloud")
    _add_common(p)
    p.add_argument("--trials", type=int, default=10000,
                   help="number of random covariances")

    return parser


_HANDLERS = {
    "wit": _cmd_wit,
    "swipt": _cmd_swipt,
    "region": _cmd_region,
    "multicast": _cmd_multicast,
    "baseline": _cmd_baseline,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    if getattr(args, "q", None) is not None and not 0.0 <= args.q <= 1.0:
        parser.error(f"--q must lie in [0, 1], got {args.q}")
    if getattr(args, "points", None) is not None and args.points < 2:
        parser.error(f"--points must be >= 2, got {args.points}")
    if getattr(args, "trials", None) is not None and args.trials < 1:
        parser.error(f"--trials must be >= 1, got {args.trials}")

    try:
        return _HANDLERS[args.command](args)
    except ChannelFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ChannelDimensionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION


if __name__ == "__main__":
    sys.exit(main())
