"""Problem definitions: bandit instances, epsilon-good sets, margins and
simplex utilities.

An instance is a vector of Gaussian arm means together with an accuracy
parameter ``epsilon``. In additive mode an arm is good when its mean is
within ``epsilon`` of the best mean; in multiplicative mode when it is
within a ``(1 - epsilon)`` factor of the best mean.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

ADDITIVE = "additive"
MULTIPLICATIVE = "multiplicative"

_INSTANCE_FIELDS = {"means", "epsilon", "mode", "variance"}


class UnsupportedModeError(ValueError):
    """Operation not defined for the instance's mode."""


class InfeasibleFloorError(ValueError):
    """Floor projection requested with eta > 1/K."""


@dataclass(frozen=True)
class BanditInstance:
    """A Gaussian bandit problem with an epsilon-good-set objective.

    means: one reward mean per arm, K >= 2.
    epsilon: accuracy parameter, > 0 (and < 1 in multiplicative mode).
    mode: "additive" or "multiplicative".
    variance: common reward variance (sampling only; the transport costs
        below assume the unit-variance normalization).
    """

    means: tuple
    epsilon: float
    mode: str = ADDITIVE
    variance: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "means", tuple(float(m) for m in self.means))
        if len(self.means) < 2:
            raise ValueError("need at least 2 arms")
        if not all(np.isfinite(self.means)):
            raise ValueError("all means must be finite")
        if self.mode not in (ADDITIVE, MULTIPLICATIVE):
            raise ValueError(f"unknown mode {self.mode!r}")
        if not (self.epsilon > 0 and np.isfinite(self.epsilon)):
            raise ValueError("epsilon must be positive and finite")
        if self.mode == MULTIPLICATIVE:
            if self.epsilon >= 1:
                raise ValueError("multiplicative mode requires epsilon < 1")
            if min(self.means) <= 0:
                # the (1-eps)*max threshold is meaningless for non-positive
                # maxima; reject instead of returning a nonsense set
                raise ValueError("multiplicative mode requires positive means")
        if not (self.variance > 0):
            raise ValueError("variance must be positive")

    @property
    def n_arms(self) -> int:
        return len(self.means)

    def means_array(self) -> np.ndarray:
        return np.asarray(self.means, dtype=np.float64)


@dataclass(frozen=True)
class ArmOrder:
    """Stable descending ordering of the arms.

    ``order[r]`` is the original index of the arm with sorted rank ``r``;
    ties keep their original relative order, so the mapping is deterministic.
    """

    order: tuple
    sorted_means: tuple

    @classmethod
    def from_means(cls, means) -> "ArmOrder":
        means = np.asarray(means, dtype=np.float64)
        order = np.argsort(-means, kind="stable")
        return cls(tuple(int(i) for i in order), tuple(float(m) for m in means[order]))


def good_threshold(means, epsilon: float, mode: str) -> float:
    top = float(np.max(means))
    if mode == ADDITIVE:
        return top - epsilon
    return (1.0 - epsilon) * top


def good_set_from_means(means, epsilon: float, mode: str) -> frozenset:
    """Good set for raw means, without instance validation.

    Used on empirical means, which may violate the positivity requirement
    of a multiplicative ``BanditInstance``.
    """
    means = np.asarray(means, dtype=np.float64)
    thr = good_threshold(means, epsilon, mode)
    return frozenset(int(a) for a in np.flatnonzero(means >= thr))


def good_set(instance: BanditInstance) -> frozenset:
    """The set of epsilon-good arms (0-based indices).

    Boundary equality counts as good. The result always contains every
    argmax arm and is therefore non-empty.
    """
    return good_set_from_means(instance.means_array(), instance.epsilon, instance.mode)


def margins(instance: BanditInstance):
    """Upper and lower margins (additive mode only).

    Returns ``(alpha, beta)`` where ``alpha`` is the slack of the worst good
    arm above the threshold and ``beta`` the slack of the best bad arm below
    it; ``beta`` is None when every arm is good.
    """
    if instance.mode != ADDITIVE:
        raise UnsupportedModeError("margins are defined for additive mode only")
    means = instance.means_array()
    thr = good_threshold(means, instance.epsilon, ADDITIVE)
    good = means >= thr
    alpha = float(np.min(means[good]) - thr)
    if good.all():
        return alpha, None
    beta = float(thr - np.max(means[~good]))
    return alpha, beta


def project_floor(weights, eta: float) -> np.ndarray:
    """Project a simplex vector onto the simplex with coordinate floor eta.

    Coordinates below the floor are raised to it and the remaining mass is
    scaled down proportionally over the others, iterating until the scaled
    coordinates are themselves above the floor.
    """
    w = np.asarray(weights, dtype=np.float64).copy()
    k = w.size
    if not (0 < eta <= 1.0 / k + 1e-12):
        raise InfeasibleFloorError(f"floor {eta} infeasible for {k} arms")
    fixed = np.zeros(k, dtype=bool)
    for _ in range(k):
        fixed |= w < eta
        if fixed.all():
            return np.full(k, 1.0 / k)
        free_mass = 1.0 - eta * np.count_nonzero(fixed)
        scaled = w[~fixed] * (free_mass / w[~fixed].sum())
        if (scaled >= eta).all():
            out = np.where(fixed, eta, 0.0)
            out[~fixed] = scaled
            return out
    return np.full(k, 1.0 / k)


def exploration_rate(t: int, n_arms: int) -> float:
    """Minimal per-arm sampling rate at time t: 1 / (2 sqrt(K^2 + t))."""
    if t < 1:
        raise ValueError("t must be >= 1")
    return 1.0 / (2.0 * np.sqrt(n_arms**2 + t))


def check_weights(weights, n_arms: int, require_positive: bool = False) -> np.ndarray:
    w = np.asarray(weights, dtype=np.float64)
    if w.shape != (n_arms,):
        raise ValueError(f"expected {n_arms} weights, got shape {w.shape}")
    if (w < 0).any():
        raise ValueError("weights must be non-negative")
    if abs(w.sum() - 1.0) > 1e-9:
        raise ValueError("weights must sum to 1")
    if require_positive and (w == 0).any():
        raise ValueError("weights must be strictly positive")
    return w


def sample_reward(rng: np.random.Generator, instance: BanditInstance, arm: int) -> float:
    """One Gaussian reward draw for the given arm, consuming one draw from rng."""
    if not 0 <= arm < instance.n_arms:
        raise ValueError(f"arm index {arm} out of range")
    return float(rng.normal(instance.means[arm], np.sqrt(instance.variance)))


def parse_instance(data: dict) -> BanditInstance:
    """Build an instance from a JSON-style dict, rejecting unknown fields."""
    unknown = set(data) - _INSTANCE_FIELDS
    if unknown:
        raise ValueError(f"unknown instance fields: {sorted(unknown)}")
    if "means" not in data or "epsilon" not in data:
        raise ValueError("instance requires 'means' and 'epsilon'")
    return BanditInstance(
        means=tuple(data["means"]),
        epsilon=float(data["epsilon"]),
        mode=data.get("mode", ADDITIVE),
        variance=float(data.get("variance", 1.0)),
    )


def load_instance(path) -> BanditInstance:
    with open(path) as fh:
        return parse_instance(json.load(fh))


def instance_to_dict(instance: BanditInstance) -> dict:
    return {
        "means": list(instance.means),
        "epsilon": instance.epsilon,
        "mode": instance.mode,
        "variance": instance.variance,
    }
