"""Monte Carlo experiment harness: fixed-confidence campaigns, fixed-budget
F1 evaluation, a round-robin baseline, and deterministic CSV emission.

Trials are seeded from (base seed, delta index, trial index) through a
stable 64-bit mixer, so any single trial can be replayed in isolation and
parallel execution is byte-identical to serial execution.
"""

from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .model import BanditInstance, good_set, good_set_from_means, sample_reward
from .solver import SolveConfig, mirror_ascent
from .tracker import TrackerState, TrialRecord, _empirical_means_for_oracle, next_arm, run
from .model import MULTIPLICATIVE, exploration_rate, project_floor

TRACK_AND_STOP = "tas"
UNIFORM = "uniform"
_ALGORITHMS = (TRACK_AND_STOP, UNIFORM)


@dataclass(frozen=True)
class Campaign:
    """A fixed-confidence Monte Carlo sweep over a delta grid."""

    instance: BanditInstance
    delta_grid: tuple
    trials: int
    base_seed: int = 0
    parallelism: int = 1
    algorithm: str = TRACK_AND_STOP
    lazy_period: int | None = None
    tau_max: int = 10**8

    def __post_init__(self):
        if not all(0 < d < 1 for d in self.delta_grid):
            raise ValueError("all deltas must lie in (0, 1)")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.algorithm not in _ALGORITHMS:
            raise ValueError(f"algorithm must be one of {_ALGORITHMS}")


@dataclass(frozen=True)
class BudgetRun:
    """A fixed-budget evaluation of the sampling rule (stopping disabled)."""

    instance: BanditInstance
    budget: int
    stride: int = 1
    seed: int = 0
    algorithm: str = TRACK_AND_STOP
    lazy_period: int | None = None

    def __post_init__(self):
        if self.budget < self.instance.n_arms:
            raise ValueError("budget must cover at least one pull per arm")
        if self.stride < 1:
            raise ValueError("stride must be >= 1")
        if self.algorithm not in _ALGORITHMS:
            raise ValueError(f"algorithm must be one of {_ALGORITHMS}")


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return x ^ (x >> 31)


def trial_seed(base_seed: int, delta_index: int, trial_index: int) -> int:
    """Deterministic per-trial seed; documented so trials can be replayed."""
    return (base_seed ^ _splitmix64((delta_index << 32) | trial_index)) & 0xFFFFFFFFFFFFFFFF


def _mc_trial(campaign: Campaign, delta_index: int, trial_index: int) -> TrialRecord:
    return run(
        campaign.instance,
        delta=campaign.delta_grid[delta_index],
        seed=trial_seed(campaign.base_seed, delta_index, trial_index),
        lazy_period=campaign.lazy_period,
        tau_max=campaign.tau_max,
        uniform=campaign.algorithm == UNIFORM,
    )


def mc_campaign(campaign: Campaign, out_path=None):
    """Run the campaign; returns CSV rows (and writes them when out_path is set).

    One row per trial plus a summary row per delta (mean stopping time,
    10%/90% quantiles, empirical error rate). Output is deterministic and
    independent of the parallelism degree; wall-clock times are kept out of
    the CSV so repeated campaigns are byte-identical.
    """
    jobs = [(di, ti) for di in range(len(campaign.delta_grid)) for ti in range(campaign.trials)]
    if campaign.parallelism > 1:
        with ProcessPoolExecutor(max_workers=campaign.parallelism) as pool:
            records = list(pool.map(_mc_trial, [campaign] * len(jobs), *zip(*jobs), chunksize=1))
    else:
        records = [_mc_trial(campaign, di, ti) for di, ti in jobs]

    k = campaign.instance.n_arms
    header = ["kind", "delta", "trial", "seed", "tau", "correct", "capped",
              "mean_tau", "q10_tau", "q90_tau", "error_rate"] + [f"n_{a + 1}" for a in range(k)]
    rows = [header]
    by_delta = {}
    for (di, ti), rec in zip(jobs, records):
        by_delta.setdefault(di, []).append(rec)
        rows.append(
            [
                "trial", repr(campaign.delta_grid[di]), ti, rec.seed, rec.stopping_time,
                int(rec.correct), int(rec.capped), "", "", "", "",
            ]
            + list(rec.pull_counts)
        )
    for di in range(len(campaign.delta_grid)):
        taus = np.array([r.stopping_time for r in by_delta[di]], dtype=np.float64)
        errs = np.array([not r.correct for r in by_delta[di]], dtype=np.float64)
        rows.append(
            [
                "summary", repr(campaign.delta_grid[di]), "", "", "", "", "",
                repr(float(taus.mean())), repr(float(np.quantile(taus, 0.1))),
                repr(float(np.quantile(taus, 0.9))), repr(float(errs.mean())),
            ]
            + [""] * k
        )
    if out_path is not None:
        write_csv(rows, out_path)
    return rows


def uniform_baseline_step(state: TrackerState) -> int:
    """Round-robin comparator: cycle through the arms in index order."""
    return state.t % state.pull_counts.size


def f1_score(estimate: frozenset, truth: frozenset):
    """(f1, precision, recall) of an estimated good set against the truth."""
    if not estimate:
        return 0.0, 0.0, 0.0
    hit = len(estimate & truth)
    precision = hit / len(estimate)
    recall = hit / len(truth)
    if precision + recall == 0:
        return 0.0, precision, recall
    return 2 * precision * recall / (precision + recall), precision, recall


def budget_run(spec: BudgetRun, out_path=None):
    """Run the sampling rule to a fixed budget, recording F1 snapshots.

    Emits one row per ``stride`` pulls (and one at the end of the burn-in):
    t, F1 of the empirical good set against the true good set, precision,
    recall. The stopping rule is disabled.
    """
    instance = spec.instance
    k = instance.n_arms
    lazy_period = spec.lazy_period if spec.lazy_period is not None else 100 * k
    mult = instance.mode == MULTIPLICATIVE
    rng = np.random.default_rng(spec.seed)
    truth = good_set(instance)

    counts = np.zeros(k, dtype=np.int64)
    sums = np.zeros(k)
    for a in range(k):
        sums[a] += sample_reward(rng, instance, a)
        counts[a] += 1
    state = TrackerState(
        t=k,
        pull_counts=counts,
        reward_sums=sums,
        empirical_means=sums / counts,
        cumulative_weights=np.ones(k),
    )

    rows = [["t", "f1", "precision", "recall"]]

    def snapshot():
        estimate = good_set_from_means(state.empirical_means, instance.epsilon, instance.mode)
        f1, precision, recall = f1_score(estimate, truth)
        rows.append([state.t, repr(f1), repr(precision), repr(recall)])

    snapshot()
    while state.t < spec.budget:
        if spec.algorithm == UNIFORM:
            arm = uniform_baseline_step(state)
            state.cumulative_weights += 1.0 / k
        else:
            if state.cached_weights is None or state.cache_age >= lazy_period:
                emp = _empirical_means_for_oracle(state.empirical_means, mult)
                emp_instance = BanditInstance(
                    means=tuple(emp),
                    epsilon=instance.epsilon,
                    mode=instance.mode,
                    variance=instance.variance,
                )
                result = mirror_ascent(
                    emp_instance, SolveConfig(target_accuracy=1.0 / np.sqrt(state.t))
                )
                state.cached_weights = result.weights
                state.cache_age = 0
            eta = exploration_rate(state.t, k)
            state.cumulative_weights += project_floor(state.cached_weights, eta)
            arm = next_arm(state)
            state.cache_age += 1
        state.reward_sums[arm] += sample_reward(rng, instance, arm)
        state.pull_counts[arm] += 1
        state.t += 1
        state.empirical_means = state.reward_sums / state.pull_counts
        if (state.t - k) % spec.stride == 0 or state.t == spec.budget:
            snapshot()
    if out_path is not None:
        write_csv(rows, out_path)
    return rows


def write_csv(rows, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerows(rows)
