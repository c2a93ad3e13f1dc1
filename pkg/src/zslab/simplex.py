"""Closed-form gradient-descent strategy: Euclidean projection onto the simplex.

The learner plays ``argmax_x { y.x - ||x||^2 / (2 eta) }`` over the simplex.
The KKT conditions give ``x_j = eta (y_j - mean_S y) + 1/|S|`` on a support
set ``S`` found by greedily dropping the lowest payoff until every assigned
mass is non-negative.
"""

from __future__ import annotations

import numpy as np


def _mass(y: np.ndarray, support: list[int], j: int, eta: float) -> float:
    size = len(support)
    mean = np.sum(y[support]) / size
    return eta * (y[j] - mean) + 1.0 / size


def support_set(y, eta: float) -> tuple[int, ...]:
    """Indices (0-based) of the strategies that receive positive mass.

    Ties for the minimum payoff drop the lowest index first; the resulting
    strategy does not depend on that choice.
    """
    y = np.asarray(y, dtype=float)
    if eta <= 0:
        raise ValueError(f"eta must be positive, got {eta}")
    support = list(range(y.size))
    while len(support) > 1:
        j = min(support, key=lambda k: (y[k], k))
        if _mass(y, support, j, eta) < 0:
            support.remove(j)
        else:
            break
    return tuple(support)


def gd_strategy(y, eta: float) -> np.ndarray:
    """Mixed strategy chosen by gradient descent from cumulative payoffs ``y``."""
    y = np.asarray(y, dtype=float)
    support = list(support_set(y, eta))
    size = len(support)
    mean = np.sum(y[support]) / size
    x = np.zeros_like(y)
    x[support] = eta * (y[support] - mean) + 1.0 / size
    return x


def regularized_value(y, x, eta: float) -> float:
    """Objective ``y.x - ||x||^2 / (2 eta)``; its max over the simplex is the conjugate."""
    y = np.asarray(y, dtype=float)
    x = np.asarray(x, dtype=float)
    return float(y @ x - (x @ x) / (2.0 * eta))
