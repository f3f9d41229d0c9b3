"""Numba kernels for the best-response search and the mirror-ascent loop.

Everything here operates on means sorted in descending order; callers are
responsible for sorting and for mapping results back to original indices.
The enumeration order (good-arm pairs first, then bad arms with growing
prefixes, both in lexicographic order with strict improvement) fixes the
tie-breaking, so identical inputs give bit-identical outputs.
"""

import numpy as np
from numba import njit

CASE_NONE = -1
CASE_GOOD_MADE_BAD = 0
CASE_BAD_MADE_GOOD = 1


@njit(cache=True)
def best_response_sorted(mu, w, eps, multiplicative, n_good):
    """Minimum-cost alternative over the finite candidate families.

    Returns (case, k, l, t_bar, cost) with k a sorted index; l is the
    partner sorted index in the good-made-bad case and the prefix length in
    the bad-made-good case.
    """
    n = mu.shape[0]
    best_cost = np.inf
    best_case = CASE_NONE
    best_k = -1
    best_l = -1
    best_t = 0.0
    c = 1.0 - eps

    # flip a good arm k to bad by raising another good arm l above it
    for k in range(n_good):
        for l in range(n_good):
            if l == k:
                continue
            if multiplicative:
                denom = c * c * w[k] + w[l]
                tbar = (c * c * w[k] * mu[k] + c * w[l] * mu[l]) / denom
                top = tbar / c
            else:
                tbar = (w[k] * mu[k] + w[l] * (mu[l] - eps)) / (w[k] + w[l])
                top = tbar + eps
            cost = 0.5 * w[k] * (mu[k] - tbar) ** 2 + 0.5 * w[l] * (mu[l] - top) ** 2
            if cost < best_cost:
                best_cost = cost
                best_case = CASE_GOOD_MADE_BAD
                best_k = k
                best_l = l
                best_t = tbar

    # flip a bad arm k to good by lowering the top-l prefix down to it;
    # l must bracket the shared mean (left inequality only when the prefix
    # reaches k's own sorted position)
    for k in range(n_good, n):
        sw = 0.0
        sm = 0.0
        for l in range(1, k + 1):
            a = l - 1
            if multiplicative:
                sw += w[a]
                sm += c * w[a] * mu[a]
                tbar = (c * c * w[k] * mu[k] + sm) / (c * c * w[k] + sw)
                top = tbar / c
            else:
                sw += w[a]
                sm += w[a] * (mu[a] - eps)
                tbar = (w[k] * mu[k] + sm) / (w[k] + sw)
                top = tbar + eps
            if mu[a] < top:
                continue
            if l < k and not (top > mu[l]):
                continue
            cost = 0.5 * w[k] * (mu[k] - tbar) ** 2
            for b in range(l):
                cost += 0.5 * w[b] * (mu[b] - top) ** 2
            if cost < best_cost:
                best_cost = cost
                best_case = CASE_BAD_MADE_GOOD
                best_k = k
                best_l = l
                best_t = tbar

    return best_case, best_k, best_l, best_t, best_cost


@njit(cache=True)
def value_and_supergrad_sorted(mu, w, eps, multiplicative, n_good, grad_out):
    """Game value and its supergradient ((lambda_a - mu_a)^2 / 2) in sorted order."""
    case, k, l, tbar, cost = best_response_sorted(mu, w, eps, multiplicative, n_good)
    for a in range(grad_out.shape[0]):
        grad_out[a] = 0.0
    if case == CASE_NONE:
        return np.inf
    if multiplicative:
        top = tbar / (1.0 - eps)
    else:
        top = tbar + eps
    grad_out[k] = 0.5 * (mu[k] - tbar) ** 2
    if case == CASE_GOOD_MADE_BAD:
        grad_out[l] = 0.5 * (mu[l] - top) ** 2
    else:
        for b in range(l):
            grad_out[b] = 0.5 * (mu[b] - top) ** 2
    return cost


@njit(cache=True)
def mirror_ascent_sorted(mu, eps, multiplicative, n_good, lipschitz, n_iters, floor):
    """Entropic mirror ascent from the uniform start; returns the iterate average."""
    n = mu.shape[0]
    w = np.full(n, 1.0 / n)
    avg = np.zeros(n)
    grad = np.zeros(n)
    base = np.sqrt(2.0 * np.log(n)) / lipschitz
    for it in range(1, n_iters + 1):
        value_and_supergrad_sorted(mu, w, eps, multiplicative, n_good, grad)
        alpha = base / np.sqrt(it)
        s = 0.0
        for a in range(n):
            w[a] *= np.exp(alpha * grad[a])
            s += w[a]
        s2 = 0.0
        for a in range(n):
            w[a] /= s
            if w[a] < floor:
                w[a] = floor
            s2 += w[a]
        for a in range(n):
            w[a] /= s2
            avg[a] += w[a]
    for a in range(n):
        avg[a] /= n_iters
    return avg
