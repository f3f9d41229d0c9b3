"""Closed-form lower bounds and diagnostics on the sample complexity."""

from __future__ import annotations

import numpy as np

from .model import ADDITIVE, BanditInstance, UnsupportedModeError, good_threshold, margins


def kl_bernoulli(p: float, q: float) -> float:
    """KL divergence between Bernoulli(p) and Bernoulli(q); p, q in (0, 1)."""
    if not (0 < p < 1 and 0 < q < 1):
        raise ValueError("kl_bernoulli requires p, q in (0, 1)")
    return p * np.log(p / q) + (1 - p) * np.log((1 - p) / (1 - q))


def sample_complexity_lower_bound(t_star: float, delta: float) -> float:
    """Asymptotic lower bound on the expected stopping time: T* log(1/(2.4 delta))."""
    if not (0 < delta < 1):
        raise ValueError("delta must be in (0, 1)")
    return t_star * np.log(1.0 / (2.4 * delta))


def arm_count_lower_bound(instance: BanditInstance) -> float:
    """Moderate-confidence lower bound, linear in the number of arms.

    Averaged over permuted instances:
    (1 / (12 |G_beta|^3)) * sum_b 1 / (mu_max - mu_b + beta)^2,
    where beta is the lower margin and G_beta the good set at accuracy beta.
    Requires at least one bad arm.
    """
    if instance.mode != ADDITIVE:
        raise UnsupportedModeError("defined for additive mode only")
    _, beta = margins(instance)
    if beta is None:
        raise ValueError("requires at least one bad arm")
    mu = instance.means_array()
    top = mu.max()
    g_beta = int(np.count_nonzero(mu >= top - beta))
    total = float(np.sum(1.0 / (top - mu + beta) ** 2))
    return total / (12.0 * g_beta**3)


def margin_diagnostic(instance: BanditInstance):
    """Margin-based complexity diagnostic; returns (value, degenerate).

    2 * sum_a max(1/(mu_max - eps - mu_a)^2, 1/(mu_max + alpha - mu_a)^2)
    with alpha the upper margin. Terms with an exactly-zero denominator are
    skipped and flagged via ``degenerate`` instead of being silently
    dropped. Intended as a diagnostic satisfying value <= T* on instances
    with at least two good arms (every margin then corresponds to a
    realizable change of measure).
    """
    if instance.mode != ADDITIVE:
        raise UnsupportedModeError("defined for additive mode only")
    alpha, _ = margins(instance)
    mu = instance.means_array()
    thr = good_threshold(mu, instance.epsilon, ADDITIVE)
    d1 = thr - mu
    d2 = mu.max() + alpha - mu
    degenerate = bool((d1 == 0).any() or (d2 == 0).any())
    total = 0.0
    for a in range(mu.size):
        terms = []
        if d1[a] != 0:
            terms.append(1.0 / d1[a] ** 2)
        if d2[a] != 0:
            terms.append(1.0 / d2[a] ** 2)
        if terms:
            total += max(terms)
    return 2.0 * total, degenerate
