"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 invalid input.
"""

from __future__ import annotations

import argparse
import itertools
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .boundary import find_delta_star, slope_curve
from .core import ErrorModel, Scenario, validate_scenario
from .errors import DriftCorrectError, SingularModel
from .estimators import (
    ConfusionCounts,
    calibration_estimate,
    estimate_rates,
    misclassification_estimate,
)
from .moments import CALIBRATION, MISCLASSIFICATION, mse, mse_difference_values
from .simulator import ABORT, DEFAULT_POPULATION, EXCLUDE, SimConfig, simulate_moments
from .verification import ALLOWANCE_C, run_grid

SEED_ENV = "DRIFTCORRECT_SEED"

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_USAGE, EXIT_INVALID = 0, 1, 2, 3


# -- output ---------------------------------------------------------------

def _format_cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def _json_cell(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (float, np.floating)):
        return None if math.isnan(value) else float(value)
    if isinstance(value, np.integer):
        return int(value)
    return value


def render(columns, rows, meta, fmt) -> str:
    """CSV with ``#``-prefixed metadata lines, or a JSON object with ``meta`` and ``data``."""
    if fmt == "json":
        data = {col: [_json_cell(row[i]) for row in rows] for i, col in enumerate(columns)}
        meta = {k: _json_cell(v) for k, v in meta.items()}
        return json.dumps({"meta": meta, "data": data}, indent=2, sort_keys=False) + "\n"
    lines = [f"# {key}: {json.dumps(_json_cell(value))}" for key, value in meta.items()]
    lines.append(",".join(columns))
    lines.extend(",".join(_format_cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def _emit(args, columns, rows, extra_meta=None):
    meta = {"command": args.command, "version": __version__}
    for key, value in sorted(vars(args).items()):
        if key not in ("command", "handler"):
            meta[f"param.{key}"] = value
    meta.update(extra_meta or {})
    text = render(columns, rows, meta, args.format)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)


# -- argument types -------------------------------------------------------

def _float_list(text):
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _int_list(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _counts(text):
    values = _int_list(text)
    if len(values) != 4:
        raise argparse.ArgumentTypeError("--counts takes n11,n10,n01,n00")
    return values


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise DriftCorrectError(f"{SEED_ENV}={env!r} is not an integer")
    return 0


def _open_grid(lo, hi, points):
    return np.linspace(lo, hi, points + 2)[1:-1]


# -- commands -------------------------------------------------------------

def cmd_slope_curve(args):
    if args.steps < 1:
        raise DriftCorrectError("--steps must be positive")
    p_grid = np.linspace(args.p_min, args.p_max, args.steps + 1)
    series = slope_curve(args.alpha, p_grid)
    columns = ["p"] + [f"slope_alpha_{a:g}" for a in args.alpha] + ["lower_bound"]
    rows = [[p] + [s.y[i] for s in series] for i, p in enumerate(p_grid)]
    _emit(args, columns, rows)
    return EXIT_OK


def cmd_mse_diff_curve(args):
    combos = list(itertools.product(args.alpha, args.n, args.p00, args.p11))
    rows = []
    for alpha, n, p00, p11 in combos:
        model = ErrorModel(p00, p11)
        if model.is_singular:
            raise SingularModel(f"p00 + p11 - 1 = {model.d:.3g}: confusion matrix is singular")
        Scenario(alpha, 0.0, n)
        deltas = _open_grid(-alpha, 1.0 - alpha, args.delta_steps)
        values = mse_difference_values(p00, p11, alpha, deltas, n)
        rows.extend([alpha, n, p00, p11, d, v] for d, v in zip(deltas, values))
    columns = ["alpha", "n", "p00", "p11", "delta", "D"]
    if len(combos) == 1:
        columns, rows = columns[4:], [row[4:] for row in rows]
    _emit(args, columns, rows)
    return EXIT_OK


def cmd_boundary_curve(args):
    combos = list(itertools.product(args.alpha, args.n))
    rows = []
    for alpha, n in combos:
        for p in _open_grid(0.5, 1.0, args.steps):
            point = find_delta_star(float(p), alpha, n)
            star = point.delta_star if point.found else float("nan")
            rows.append([alpha, n, p, star, point.found])
    columns = ["alpha", "n", "p", "delta_star", "found_flag"]
    if len(combos) == 1:
        columns, rows = columns[2:], [row[2:] for row in rows]
    _emit(args, columns, rows)
    return EXIT_OK


def cmd_simulate(args):
    model = ErrorModel(args.p00, args.p11)
    scenario = validate_scenario(args.alpha, args.delta, args.n, model)
    seed = _seed(args)
    config = SimConfig(model, scenario, args.population, args.reps, seed, args.policy)
    result = simulate_moments(config, workers=args.workers)
    rows = []
    for kind, empirical in ((MISCLASSIFICATION, result.moments_p), (CALIBRATION, result.moments_c)):
        try:
            analytic = mse(model, scenario, kind)
        except SingularModel:
            analytic = None
        for moment in ("bias", "variance", "mse"):
            a = getattr(analytic, moment) if analytic else float("nan")
            e = getattr(empirical, moment)
            se = result.standard_errors[kind].get(moment, float("nan"))
            z = (e - a) / se if se and not math.isnan(se) else float("nan")
            rows.append([kind, moment, a, e, se, z])
    extra = {
        "seed": seed,
        "degenerate_count": result.degenerate_count,
        "effective_replications": result.effective_replications,
        "degeneracy_rate": result.degeneracy_rate,
    }
    _emit(args, ["estimator", "moment", "analytic", "empirical", "standard_error", "z"], rows, extra)
    return EXIT_OK


def cmd_verify(args):
    seed = _seed(args)
    rows = run_grid(args.reps, seed, args.population, args.allowance_c, workers=args.workers)
    columns = [
        "alpha", "delta", "n", "p00", "p11", "estimator", "moment",
        "analytic", "empirical", "standard_error", "allowance", "passed",
    ]
    table = [
        [r.alpha, r.delta, r.n, r.p00, r.p11, r.estimator, r.moment,
         r.analytic, r.empirical, r.standard_error, r.allowance, r.passed]
        for r in rows
    ]
    failures = sum(not r.passed for r in rows)
    _emit(args, columns, table, {"seed": seed, "checks": len(rows), "failures": failures})
    if failures:
        print(f"verify: {failures} of {len(rows)} checks outside tolerance", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_estimate(args):
    if not 0.0 <= args.alpha_star <= 1.0:
        raise DriftCorrectError("--alpha-star must lie in [0, 1]")
    rates = estimate_rates(ConfusionCounts(*args.counts))
    rows = []
    if args.method in ("misclassification", "both"):
        est = misclassification_estimate(args.alpha_star, rates, args.tolerance)
        rows.append([MISCLASSIFICATION, est.value, est.out_of_range])
    if args.method in ("calibration", "both"):
        value = calibration_estimate(args.alpha_star, rates)
        rows.append([CALIBRATION, value, not 0.0 <= value <= 1.0])
    _emit(args, ["method", "estimate", "out_of_range"], rows)
    return EXIT_OK


# -- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="driftcorrect",
        description="Misclassification vs calibration estimators under prior probability shift.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        p.add_argument("--output", "-o", default="-", help="output file (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        return p

    p = add("slope-curve", cmd_slope_curve, "absolute calibration-bias slope against p")
    p.add_argument("--alpha", type=_float_list, default=[0.05, 0.1, 0.2, 0.3])
    p.add_argument("--p-min", type=float, default=0.5)
    p.add_argument("--p-max", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=200, help="intervals; steps + 1 points")

    p = add("mse-diff-curve", cmd_mse_diff_curve, "MSE difference against drift")
    p.add_argument("--alpha", type=_float_list, default=[0.05, 0.3])
    p.add_argument("--n", type=_int_list, default=[50, 1000])
    p.add_argument("--p00", type=_float_list, default=[0.6, 0.7])
    p.add_argument("--p11", type=_float_list, default=[0.6, 0.7])
    p.add_argument("--delta-steps", type=int, default=400, help="interior points of (-alpha, 1-alpha)")

    p = add("boundary-curve", cmd_boundary_curve, "decision boundary delta*(p)")
    p.add_argument("--alpha", type=_float_list, default=[0.05, 0.1, 0.2, 0.3])
    p.add_argument("--n", type=_int_list, default=[50, 1000])
    p.add_argument("--steps", type=int, default=200, help="interior points of (0.5, 1)")

    p = add("simulate", cmd_simulate, "empirical vs analytic moments for one scenario")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p00", type=float, required=True)
    p.add_argument("--p11", type=float, required=True)
    p.add_argument("--population", type=int, default=DEFAULT_POPULATION)
    p.add_argument("--reps", type=int, default=200_000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--policy", choices=(EXCLUDE, ABORT), default=EXCLUDE)
    p.add_argument("--workers", type=int, default=1)

    p = add("verify", cmd_verify, "Monte Carlo cross-check over the acceptance grid")
    p.add_argument("--grid", choices=("default",), default="default")
    p.add_argument("--reps", type=int, default=200_000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--population", type=int, default=DEFAULT_POPULATION)
    p.add_argument("--allowance-c", type=float, default=ALLOWANCE_C)
    p.add_argument("--workers", type=int, default=1)

    p = add("estimate", cmd_estimate, "correct a naive rate with test-set confusion counts")
    p.add_argument("--counts", type=_counts, required=True, help="n11,n10,n01,n00")
    p.add_argument("--alpha-star", type=float, required=True)
    p.add_argument(
        "--method", choices=("misclassification", "calibration", "both"), default="both"
    )
    p.add_argument("--tolerance", type=float, default=1e-9)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.handler(args)
    except DriftCorrectError as exc:
        print(f"driftcorrect {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
