"""Shared fixtures and generators for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from allgood import (
    ADDITIVE,
    MULTIPLICATIVE,
    BanditInstance,
    SolveConfig,
    game_value,
    mirror_ascent,
    project_floor,
)


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Trigger numba compilation once so per-test timings are meaningful."""
    mirror_ascent(BanditInstance(means=(0.9, 0.6), epsilon=0.05), SolveConfig(target_accuracy=0.05))
    game_value(
        BanditInstance(means=(0.9, 0.6), epsilon=0.2, mode=MULTIPLICATIVE),
        np.array([0.5, 0.5]),
    )


def random_instance(
    rng: np.random.Generator,
    modes=(ADDITIVE, MULTIPLICATIVE),
    k_choices=(2, 3, 4),
    eps_choices=(0.1, 0.3),
) -> BanditInstance:
    """A random instance with means in (0, 1], valid in both modes."""
    k = int(rng.choice(k_choices))
    mode = str(rng.choice(modes))
    eps = float(rng.choice(eps_choices))
    means = rng.uniform(0.05, 1.0, size=k)
    return BanditInstance(means=tuple(means), epsilon=eps, mode=mode)


def random_floored_weights(rng: np.random.Generator, n_arms: int) -> np.ndarray:
    """A random simplex vector bounded away from the boundary."""
    return project_floor(rng.dirichlet(np.ones(n_arms)), 1.0 / (4 * n_arms))
