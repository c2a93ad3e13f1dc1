"""Independent reference solvers used to check the closed-form projection."""

from __future__ import annotations

from itertools import combinations

import numpy as np


def simplex_qp_bisection(y, eta: float, tol: float = 1e-15) -> np.ndarray:
    """Maximize ``y.x - ||x||^2/(2 eta)`` on the simplex by bisecting the multiplier.

    The optimum is ``x = max(eta (y - lam), 0)`` with ``lam`` fixed by
    ``sum(x) = 1``; the sum is monotone in ``lam`` so bisection converges.
    """
    y = np.asarray(y, dtype=float)
    lo = y.max() - 1.0 / eta
    hi = y.max()
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if np.maximum(eta * (y - mid), 0.0).sum() > 1.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= tol * max(1.0, abs(mid)):
            break
    x = np.maximum(eta * (y - 0.5 * (lo + hi)), 0.0)
    return x / x.sum()


def exhaustive_support(y, eta: float, tie_tol: float = 1e-12) -> tuple[int, ...]:
    """Best support set over every subset whose closed form is feasible.

    Among subsets with (numerically) equal objective the largest one wins,
    matching the maximal feasible set.
    """
    y = np.asarray(y, dtype=float)
    n = y.size
    found: list[tuple[float, int, tuple[int, ...]]] = []
    for size in range(1, n + 1):
        for subset in combinations(range(n), size):
            idx = list(subset)
            mean = np.sum(y[idx]) / size
            mass = eta * (y[idx] - mean) + 1.0 / size
            if np.any(mass < 0):
                continue
            value = float(y[idx] @ mass - (mass @ mass) / (2.0 * eta))
            found.append((value, size, subset))
    best = max(v for v, _, _ in found)
    close = [(s, sub) for v, s, sub in found if v >= best - tie_tol * max(1.0, abs(best))]
    return max(close)[1]
