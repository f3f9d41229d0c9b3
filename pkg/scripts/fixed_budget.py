"""Fixed-budget comparison: adaptive tracking vs round-robin sampling.

Runs both sampling rules (stopping disabled) to the same pull budget,
averaging the F1 score of the empirical good set against the truth over
several seeds, and prints an F1-vs-budget table. Optionally writes one CSV
per (algorithm, seed) pair.

Example:
    python scripts/fixed_budget.py --means 1,1,1,1,0.05 --epsilon 0.9 \
        --budget 3000 --stride 100 --seeds 10
"""

import argparse
import json
import os

import numpy as np

from allgood import BanditInstance, BudgetRun, budget_run
from allgood.model import parse_instance


def parse_args():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--instance", type=str, default=None, help="instance JSON file")
    parser.add_argument("--means", type=str, default="1,1,1,1,0.05")
    parser.add_argument("--epsilon", type=float, default=0.9)
    parser.add_argument("--mode", choices=["additive", "multiplicative"], default="additive")
    parser.add_argument("--budget", type=int, default=3000)
    parser.add_argument("--stride", type=int, default=100)
    parser.add_argument("--seeds", type=int, default=10, help="number of independent repetitions")
    parser.add_argument("--base-seed", type=int, default=0)
    parser.add_argument("--out-dir", type=str, default=None)
    return parser.parse_args()


def mean_f1_curve(instance, algorithm, args):
    curves = []
    for rep in range(args.seeds):
        spec = BudgetRun(
            instance=instance,
            budget=args.budget,
            stride=args.stride,
            seed=args.base_seed + rep,
            algorithm=algorithm,
        )
        out = None
        if args.out_dir:
            out = os.path.join(args.out_dir, f"{algorithm}_seed{spec.seed}.csv")
        rows = budget_run(spec, out_path=out)
        curves.append([(int(r[0]), float(r[1])) for r in rows[1:]])
    ts = [t for t, _ in curves[0]]
    mean_f1 = np.mean([[f for _, f in curve] for curve in curves], axis=0)
    return ts, mean_f1


def main():
    args = parse_args()
    if args.instance:
        with open(args.instance) as fh:
            instance = parse_instance(json.load(fh))
    else:
        instance = BanditInstance(
            means=tuple(float(m) for m in args.means.split(",")),
            epsilon=args.epsilon,
            mode=args.mode,
        )
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)

    print(f"instance: means={instance.means} eps={instance.epsilon} mode={instance.mode}")
    print(f"mean F1 over {args.seeds} seeds, budget {args.budget}\n")

    ts, f1_tas = mean_f1_curve(instance, "tas", args)
    _, f1_uniform = mean_f1_curve(instance, "uniform", args)

    print(f"{'t':>8} {'adaptive':>10} {'uniform':>10}")
    for t, a, u in zip(ts, f1_tas, f1_uniform):
        print(f"{t:>8} {a:>10.3f} {u:>10.3f}")
    if args.out_dir:
        print(f"\nper-seed curves written to {args.out_dir}/")


if __name__ == "__main__":
    main()
