"""Fixed-confidence campaign: stopping-time scaling over a delta grid.

Runs Monte Carlo trials of the adaptive agent (and optionally the uniform
baseline) on one instance across several confidence levels, writes the
per-trial CSV, and prints a summary table with the stopping-time ratio to
log(1/delta) next to the instance's characteristic time.

Example:
    python scripts/fixed_confidence.py --means 0.9,0.6 --epsilon 0.05 \
        --deltas 1e-2,1e-4,1e-6 --trials 50 --out results/two_arm.csv
"""

import argparse
import math
import os

from allgood import BanditInstance, Campaign, SolveConfig, characteristic_time, mc_campaign


def parse_args():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--means", type=str, default="0.9,0.6", help="comma-separated arm means")
    parser.add_argument("--epsilon", type=float, default=0.05)
    parser.add_argument("--mode", choices=["additive", "multiplicative"], default="additive")
    parser.add_argument("--deltas", type=str, default="1e-2,1e-4,1e-6")
    parser.add_argument("--trials", type=int, default=50)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--algorithm", choices=["tas", "uniform"], default="tas")
    parser.add_argument("--threads", type=int, default=min(8, os.cpu_count() or 1))
    parser.add_argument("--out", type=str, default=None, help="optional CSV path")
    return parser.parse_args()


def main():
    args = parse_args()
    instance = BanditInstance(
        means=tuple(float(m) for m in args.means.split(",")),
        epsilon=args.epsilon,
        mode=args.mode,
    )
    deltas = tuple(float(d) for d in args.deltas.split(","))
    t_star = characteristic_time(instance, SolveConfig(target_accuracy=1e-4))
    print(f"instance: means={instance.means} eps={instance.epsilon} mode={instance.mode}")
    print(f"characteristic time T* = {t_star:.2f}\n")

    campaign = Campaign(
        instance=instance,
        delta_grid=deltas,
        trials=args.trials,
        base_seed=args.seed,
        parallelism=args.threads,
        algorithm=args.algorithm,
    )
    rows = mc_campaign(campaign, out_path=args.out)

    print(f"{'delta':>10} {'mean tau':>12} {'q10':>10} {'q90':>10} {'err':>6} {'ratio':>8}")
    for row in rows:
        if row[0] != "summary":
            continue
        delta = float(row[1])
        mean_tau = float(row[7])
        ratio = mean_tau / math.log(1.0 / delta)
        print(
            f"{delta:>10.1e} {mean_tau:>12.1f} {float(row[8]):>10.1f} "
            f"{float(row[9]):>10.1f} {float(row[10]):>6.3f} {ratio:>8.1f}"
        )
    print(f"\nratio column should approach T* = {t_star:.2f} as delta -> 0")
    if args.out:
        print(f"per-trial rows written to {args.out}")


if __name__ == "__main__":
    main()
