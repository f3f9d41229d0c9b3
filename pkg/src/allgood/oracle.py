"""Best-response oracle: the cheapest alternative instance whose good set
differs from the current one, for a fixed sampling allocation.

The minimizer belongs to a finite family: either a good arm is dragged
below the threshold while another good arm is raised (``good_made_bad``),
or a bad arm is raised while the top arms are lowered onto a shared mean
(``bad_made_good``). The search enumerates every candidate and keeps the
cheapest, breaking ties by the first candidate in enumeration order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .model import (
    MULTIPLICATIVE,
    ArmOrder,
    BanditInstance,
    check_weights,
    good_set_from_means,
)

GOOD_MADE_BAD = "good_made_bad"
BAD_MADE_GOOD = "bad_made_good"

_CASE_NAMES = {
    _kernels.CASE_GOOD_MADE_BAD: GOOD_MADE_BAD,
    _kernels.CASE_BAD_MADE_GOOD: BAD_MADE_GOOD,
}


@dataclass(frozen=True)
class BestResponse:
    """The minimizing alternative instance for a fixed allocation.

    case: which arm class flips.
    k: the flipped arm, as an original (0-based) index.
    l: partner arm original index (good_made_bad) or prefix length
       (bad_made_good, counted in sorted order).
    t_bar: the shared mean the moved arms are averaged onto.
    alternative: alternative mean vector, in original arm order.
    cost: transport cost sum_a w_a (mu_a - lambda_a)^2 / 2.
    """

    case: str
    k: int
    l: int
    t_bar: float
    alternative: np.ndarray
    cost: float


def _sorted_problem(instance: BanditInstance):
    order = ArmOrder.from_means(instance.means)
    mu_s = np.asarray(order.sorted_means, dtype=np.float64)
    n_good = len(good_set_from_means(mu_s, instance.epsilon, instance.mode))
    return order, mu_s, n_good


def best_response(instance: BanditInstance, weights) -> BestResponse:
    """Cheapest alternative to ``instance`` under allocation ``weights``.

    Weights must be strictly positive (the tracker's exploration floor
    guarantees this upstream).
    """
    w = check_weights(weights, instance.n_arms, require_positive=True)
    order, mu_s, n_good = _sorted_problem(instance)
    idx = np.asarray(order.order)
    case, k_s, l, tbar, cost = _kernels.best_response_sorted(
        mu_s, w[idx], instance.epsilon, instance.mode == MULTIPLICATIVE, n_good
    )
    if case == _kernels.CASE_NONE:
        raise RuntimeError("no alternative candidate found (degenerate instance)")
    if instance.mode == MULTIPLICATIVE:
        top = tbar / (1.0 - instance.epsilon)
    else:
        top = tbar + instance.epsilon
    lam_s = mu_s.copy()
    lam_s[k_s] = tbar
    if case == _kernels.CASE_GOOD_MADE_BAD:
        lam_s[l] = top
        l_out = int(idx[l])
    else:
        lam_s[:l] = top
        l_out = int(l)
    lam = np.empty_like(lam_s)
    lam[idx] = lam_s
    return BestResponse(
        case=_CASE_NAMES[case],
        k=int(idx[k_s]),
        l=l_out,
        t_bar=float(tbar),
        alternative=lam,
        cost=float(cost),
    )


def game_value(instance: BanditInstance, weights) -> float:
    """Value of the inner minimization: the best-response transport cost."""
    return best_response(instance, weights).cost


def supergradient(instance: BanditInstance, weights) -> np.ndarray:
    """Supergradient of the allocation -> game-value map at ``weights``.

    Coordinate a equals (lambda*_a - mu_a)^2 / 2 for the best response
    lambda*; arms the best response leaves untouched get exactly 0.
    """
    br = best_response(instance, weights)
    return 0.5 * (br.alternative - instance.means_array()) ** 2
