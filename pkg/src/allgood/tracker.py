"""Track-and-Stop agent: C-tracking sampling, GLR stopping, single-run driver.

The sampling rule tracks lazily-recomputed near-optimal allocations with a
shrinking exploration floor; the stopping rule compares the scaled
empirical game value against a confidence threshold. Forced-exploration
and tracking-deviation guarantees are asserted at every step when
``check_invariants`` is enabled.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .model import (
    ADDITIVE,
    MULTIPLICATIVE,
    BanditInstance,
    exploration_rate,
    good_set,
    good_set_from_means,
    good_threshold,
    project_floor,
    sample_reward,
)
from .solver import SolveConfig, mirror_ascent

# positive floor applied to empirical means before building a multiplicative
# problem for the oracle/solver (raw empirical means may dip below zero)
_MULT_MEAN_FLOOR = 1e-12


class TrackingInvariantError(AssertionError):
    """A runtime tracking guarantee was violated."""


@dataclass
class TrackerState:
    """Mutable per-run state of the agent."""

    t: int
    pull_counts: np.ndarray
    reward_sums: np.ndarray
    empirical_means: np.ndarray
    cumulative_weights: np.ndarray
    cached_weights: np.ndarray | None = None
    cache_age: int = 0


@dataclass(frozen=True)
class TrialRecord:
    """Outcome of one run: stopping time, returned set, bookkeeping."""

    stopping_time: int
    answer: frozenset
    correct: bool
    seed: int
    pull_counts: tuple
    wall_time: float
    capped: bool = False


def stopping_threshold(t: int, delta: float, n_arms: int) -> float:
    """Confidence threshold beta(t, delta) for the GLR test.

    log(1/delta) + (K/2) log(log(e + t/delta)): defined for every t >= 1,
    monotone in t, and dominated by log(1/delta) as delta -> 0.
    """
    if t < 1:
        raise ValueError("t must be >= 1")
    if not (0 < delta < 1):
        raise ValueError("delta must be in (0, 1)")
    return np.log(1.0 / delta) + 0.5 * n_arms * np.log(np.log(np.e + t / delta))


def _empirical_means_for_oracle(means: np.ndarray, multiplicative: bool) -> np.ndarray:
    if multiplicative:
        return np.maximum(means, _MULT_MEAN_FLOOR)
    return means


def _fast_game_value(means: np.ndarray, epsilon: float, multiplicative: bool, weights: np.ndarray) -> float:
    """Game value without instance/weight validation (hot path)."""
    order = np.argsort(-means, kind="stable")
    mu_s = means[order]
    thr = good_threshold(mu_s, epsilon, MULTIPLICATIVE if multiplicative else ADDITIVE)
    n_good = int(np.count_nonzero(mu_s >= thr))
    _, _, _, _, cost = _kernels.best_response_sorted(
        mu_s, weights[order], epsilon, multiplicative, n_good
    )
    return float(cost)


def z_statistic(state: TrackerState, instance: BanditInstance) -> float:
    """GLR statistic Z(t) = t * (game value of the empirical problem at N(t)/t)."""
    if (state.pull_counts < 1).any():
        raise ValueError("all arms must have been pulled at least once")
    mult = instance.mode == MULTIPLICATIVE
    means = _empirical_means_for_oracle(state.empirical_means, mult)
    w = state.pull_counts / state.t
    return state.t * _fast_game_value(means, instance.epsilon, mult, w)


def next_arm(state: TrackerState) -> int:
    """Arm whose pull count is farthest behind its cumulative target; ties -> lowest index."""
    return int(np.argmin(state.pull_counts - state.cumulative_weights))


def _check_invariants(state: TrackerState) -> None:
    t = state.t
    k = state.pull_counts.size
    if state.pull_counts.min() < np.sqrt(t + k * k) - 2 * k:
        raise TrackingInvariantError(
            f"forced exploration violated at t={t}: counts={state.pull_counts}"
        )
    dev = np.abs(state.pull_counts - state.cumulative_weights).max()
    if dev > k * (1 + np.sqrt(t)):
        raise TrackingInvariantError(f"tracking deviation {dev} too large at t={t}")


def run(
    instance: BanditInstance,
    delta: float,
    seed: int = 0,
    solve_config: SolveConfig | None = None,
    lazy_period: int | None = None,
    tau_max: int = 10**8,
    check_invariants: bool = True,
    stop_stride: int = 1,
    uniform: bool = False,
) -> TrialRecord:
    """One fixed-confidence run; returns the stopping record.

    Weights are recomputed every ``lazy_period`` steps (default 100*K) at
    target accuracy 1/sqrt(t), and re-projected onto the shrinking
    exploration floor at every step. ``uniform=True`` replaces the tracking
    rule with round-robin sampling (the stopping rule is unchanged and
    remains valid). A run exceeding ``tau_max`` is aborted and flagged.
    """
    if not (0 < delta < 1):
        raise ValueError("delta must be in (0, 1)")
    start = time.perf_counter()
    k = instance.n_arms
    if lazy_period is None:
        lazy_period = 100 * k
    if solve_config is None:
        solve_config = SolveConfig()
    mult = instance.mode == MULTIPLICATIVE
    rng = np.random.default_rng(seed)

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

    def finish(capped: bool) -> TrialRecord:
        answer = good_set_from_means(state.empirical_means, instance.epsilon, instance.mode)
        return TrialRecord(
            stopping_time=state.t,
            answer=answer,
            correct=answer == good_set(instance),
            seed=seed,
            pull_counts=tuple(int(c) for c in state.pull_counts),
            wall_time=time.perf_counter() - start,
            capped=capped,
        )

    while True:
        if not uniform:
            if state.cached_weights is None or state.cache_age >= lazy_period:
                emp = _empirical_means_for_oracle(state.empirical_means, mult)
                emp_instance = BanditInstance(
                    means=tuple(emp),
                    epsilon=instance.epsilon,
                    mode=instance.mode,
                    variance=instance.variance,
                )
                result = mirror_ascent(
                    emp_instance,
                    SolveConfig(
                        target_accuracy=1.0 / np.sqrt(state.t),
                        max_iterations=solve_config.max_iterations,
                        floor=solve_config.floor,
                    ),
                )
                state.cached_weights = result.weights
                state.cache_age = 0
            eta = exploration_rate(state.t, k)
            state.cumulative_weights += project_floor(state.cached_weights, eta)
            arm = next_arm(state)
            state.cache_age += 1
        else:
            arm = state.t % k
            state.cumulative_weights += 1.0 / k

        state.reward_sums[arm] += sample_reward(rng, instance, arm)
        state.pull_counts[arm] += 1
        state.t += 1
        state.empirical_means = state.reward_sums / state.pull_counts

        if check_invariants and not uniform:
            _check_invariants(state)

        if state.t % stop_stride == 0:
            z = z_statistic(state, instance)
            if z > stopping_threshold(state.t, delta, k):
                return finish(capped=False)
        if state.t >= tau_max:
            return finish(capped=True)
