"""Mirror ascent on the simplex for the max-min allocation program.

Maximizes the concave map from allocations to best-response cost using the
entropy mirror map, returning the running average of iterates together with
a certified suboptimality gap L * sqrt(2 log K / N).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, log, sqrt

import numpy as np

from . import _kernels
from .model import MULTIPLICATIVE, BanditInstance
from .oracle import _sorted_problem, game_value


class DegenerateInstanceError(ValueError):
    """The game value is numerically zero (an arm sits on the threshold)."""


@dataclass(frozen=True)
class SolveConfig:
    """Termination policy for one solve.

    target_accuracy: requested suboptimality bound on the game value.
    max_iterations: hard cap; when the accuracy would need more iterations
        the result is returned with certified=False.
    floor: numerical floor on iterates before renormalization (guards
        against exp-underflow collapse; perturbs the average by <= K*floor).
    """

    target_accuracy: float = 1e-4
    max_iterations: int = 10**6
    floor: float = 1e-12

    def __post_init__(self):
        if not (self.target_accuracy > 0 and np.isfinite(self.target_accuracy)):
            raise ValueError("target_accuracy must be positive and finite")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not (0 <= self.floor < 0.5):
            raise ValueError("floor must be in [0, 0.5)")


@dataclass(frozen=True)
class SolveResult:
    weights: np.ndarray
    value: float
    certified_gap: float
    iterations: int
    certified: bool


def lipschitz_constant(instance: BanditInstance) -> float:
    """L1-Lipschitz constant of the allocation -> game-value map."""
    mu = instance.means_array()
    eps = instance.epsilon
    diff = mu[:, None] - mu[None, :]
    if instance.mode == MULTIPLICATIVE:
        c = 1.0 - eps
        vals = (mu[:, None] - c * mu[None, :]) ** 2 / (2.0 * c * c)
    else:
        vals = (diff + eps) ** 2 / 2.0
    return float(vals.max())


def learning_rate(n: int, lipschitz: float, n_arms: int) -> float:
    """Step size at iteration n: (1/L) sqrt(2 log K / n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return sqrt(2.0 * log(n_arms) / n) / lipschitz


def iteration_budget(lipschitz: float, n_arms: int, target_accuracy: float) -> int:
    """Iterations needed for a certified gap of target_accuracy."""
    return int(ceil(2.0 * lipschitz**2 * log(n_arms) / target_accuracy**2))


def mirror_ascent(instance: BanditInstance, config: SolveConfig = SolveConfig()) -> SolveResult:
    """Solve for near-optimal weights from the uniform start.

    Deterministic: identical inputs give bit-identical outputs. The value
    reported is the game value at the averaged iterate, so
    value <= sup <= value + certified_gap when certified.
    """
    lip = lipschitz_constant(instance)
    k = instance.n_arms
    planned = max(1, iteration_budget(lip, k, config.target_accuracy))
    n_iters = min(planned, config.max_iterations)
    order, mu_s, n_good = _sorted_problem(instance)
    idx = np.asarray(order.order)
    avg_s = _kernels.mirror_ascent_sorted(
        mu_s,
        instance.epsilon,
        instance.mode == MULTIPLICATIVE,
        n_good,
        lip,
        n_iters,
        config.floor,
    )
    weights = np.empty_like(avg_s)
    weights[idx] = avg_s
    return SolveResult(
        weights=weights,
        value=game_value(instance, weights),
        certified_gap=lip * sqrt(2.0 * log(k) / n_iters),
        iterations=n_iters,
        certified=planned <= config.max_iterations,
    )


def characteristic_time(instance: BanditInstance, config: SolveConfig = SolveConfig()) -> float:
    """The instance's characteristic time, 1 / (max-min game value)."""
    result = mirror_ascent(instance, config)
    if result.value <= 1e-14:
        raise DegenerateInstanceError(
            "game value is numerically zero; characteristic time is unbounded"
        )
    return 1.0 / result.value
