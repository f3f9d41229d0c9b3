"""Command-line interface.

Subcommands: solve, oracle, run, mc, budget, bounds. Arm indices in all
output are 1-based. Exit codes: 0 success, 2 validation error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import bounds as bounds_mod
from . import harness, model, oracle, solver, tracker

EXIT_VALIDATION = 2
EXIT_IO = 3


def _parse_floats(text: str):
    return tuple(float(x) for x in text.split(","))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="allgood", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_instance(p):
        p.add_argument("--instance", required=True, help="instance JSON file")

    p = sub.add_parser("solve", help="compute near-optimal weights and T*")
    add_instance(p)
    p.add_argument("--accuracy", type=float, default=1e-4)
    p.add_argument("--max-iters", type=int, default=10**6)

    p = sub.add_parser("oracle", help="best-response alternative for fixed weights")
    add_instance(p)
    p.add_argument("--weights", required=True, help="comma-separated simplex weights")

    p = sub.add_parser("run", help="one fixed-confidence run")
    add_instance(p)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--lazy-period", type=int, default=None)
    p.add_argument("--tau-max", type=int, default=10**8)
    p.add_argument("--algorithm", choices=harness._ALGORITHMS, default=harness.TRACK_AND_STOP)

    p = sub.add_parser("mc", help="Monte Carlo campaign over a delta grid")
    add_instance(p)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--delta-grid", type=_parse_floats, default=None)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", required=True)
    p.add_argument("--algorithm", choices=harness._ALGORITHMS, default=harness.TRACK_AND_STOP)
    p.add_argument("--lazy-period", type=int, default=None)
    p.add_argument("--tau-max", type=int, default=10**8)

    p = sub.add_parser("budget", help="fixed-budget F1 evaluation")
    add_instance(p)
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--stride", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--algorithm", choices=harness._ALGORITHMS, default=harness.TRACK_AND_STOP)
    p.add_argument("--lazy-period", type=int, default=None)
    p.add_argument("--out", default=None)

    p = sub.add_parser("bounds", help="lower-bound diagnostics")
    add_instance(p)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--accuracy", type=float, default=1e-4)
    p.add_argument("--max-iters", type=int, default=10**6)

    return parser


def _emit(payload) -> None:
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _cmd_solve(args) -> None:
    instance = model.load_instance(args.instance)
    config = solver.SolveConfig(target_accuracy=args.accuracy, max_iterations=args.max_iters)
    result = solver.mirror_ascent(instance, config)
    _emit(
        {
            "weights": list(result.weights),
            "value": result.value,
            "t_star": (1.0 / result.value) if result.value > 1e-14 else None,
            "certified_gap": result.certified_gap,
            "iterations": result.iterations,
            "certified": result.certified,
        }
    )


def _cmd_oracle(args) -> None:
    instance = model.load_instance(args.instance)
    response = oracle.best_response(instance, np.asarray(_parse_floats(args.weights)))
    payload = {
        "case": response.case,
        "k": response.k + 1,
        "l": response.l + 1 if response.case == oracle.GOOD_MADE_BAD else response.l,
        "t_bar": response.t_bar,
        "lambda": list(response.alternative),
        "cost": response.cost,
    }
    _emit(payload)


def _record_payload(record: tracker.TrialRecord) -> dict:
    return {
        "stopping_time": record.stopping_time,
        "answer": sorted(a + 1 for a in record.answer),
        "correct": record.correct,
        "seed": record.seed,
        "pull_counts": list(record.pull_counts),
        "wall_time": record.wall_time,
        "capped": record.capped,
    }


def _cmd_run(args) -> None:
    instance = model.load_instance(args.instance)
    record = tracker.run(
        instance,
        delta=args.delta,
        seed=args.seed,
        lazy_period=args.lazy_period,
        tau_max=args.tau_max,
        uniform=args.algorithm == harness.UNIFORM,
    )
    _emit(_record_payload(record))


def _cmd_mc(args) -> None:
    if (args.delta is None) == (args.delta_grid is None):
        raise ValueError("provide exactly one of --delta or --delta-grid")
    grid = args.delta_grid if args.delta_grid is not None else (args.delta,)
    campaign = harness.Campaign(
        instance=model.load_instance(args.instance),
        delta_grid=tuple(grid),
        trials=args.trials,
        base_seed=args.seed,
        parallelism=args.threads,
        algorithm=args.algorithm,
        lazy_period=args.lazy_period,
        tau_max=args.tau_max,
    )
    harness.mc_campaign(campaign, out_path=args.out)


def _cmd_budget(args) -> None:
    spec = harness.BudgetRun(
        instance=model.load_instance(args.instance),
        budget=args.budget,
        stride=args.stride,
        seed=args.seed,
        algorithm=args.algorithm,
        lazy_period=args.lazy_period,
    )
    rows = harness.budget_run(spec, out_path=args.out)
    if args.out is None:
        for row in rows:
            sys.stdout.write(",".join(str(c) for c in row) + "\n")


def _cmd_bounds(args) -> None:
    instance = model.load_instance(args.instance)
    config = solver.SolveConfig(target_accuracy=args.accuracy, max_iterations=args.max_iters)
    flags = []
    try:
        t_star = solver.characteristic_time(instance, config)
        delta_bound = bounds_mod.sample_complexity_lower_bound(t_star, args.delta)
    except solver.DegenerateInstanceError:
        t_star = None
        delta_bound = None
        flags.append("degenerate_instance")
    arm_bound = None
    diagnostic = None
    if instance.mode == model.ADDITIVE:
        try:
            arm_bound = bounds_mod.arm_count_lower_bound(instance)
        except ValueError:
            flags.append("no_bad_arm")
        diagnostic, degenerate = bounds_mod.margin_diagnostic(instance)
        if degenerate:
            flags.append("degenerate_margin_term")
    else:
        flags.append("additive_only_bounds_skipped")
    _emit(
        {
            "t_star": t_star,
            "delta_lower_bound": delta_bound,
            "arm_count_lower_bound": arm_bound,
            "margin_diagnostic": diagnostic,
            "flags": flags,
        }
    )


_COMMANDS = {
    "solve": _cmd_solve,
    "oracle": _cmd_oracle,
    "run": _cmd_run,
    "mc": _cmd_mc,
    "budget": _cmd_budget,
    "bounds": _cmd_bounds,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _COMMANDS[args.command](args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    return 0


if __name__ == "__main__":
    sys.exit(main())
