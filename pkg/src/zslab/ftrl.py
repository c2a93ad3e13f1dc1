"""Discrete-time gradient descent (FTRL with squared-L2 regularizer) in zero-sum games.

Both players update simultaneously from their pre-step payoff vectors::

    x_i   = gd_strategy(y_i, eta)
    y_1' = y_1 + A x_2
    y_2' = y_2 - A^T x_1
"""

from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .game import NormalizedGame, PayoffMatrix2x2
from .simplex import gd_strategy


@dataclass(frozen=True)
class LearnerState:
    y: np.ndarray
    eta: float

    def __post_init__(self) -> None:
        y = np.array(self.y, dtype=float)
        if y.ndim != 1 or y.size < 2:
            raise ValueError("payoff vector needs at least two strategies")
        if not np.all(np.isfinite(y)):
            raise ValueError("payoff vector must be finite")
        if not self.eta > 0:
            raise ValueError(f"eta must be positive, got {self.eta}")
        y.flags.writeable = False
        object.__setattr__(self, "y", y)

    @property
    def n(self) -> int:
        return self.y.size

    def strategy(self) -> np.ndarray:
        return gd_strategy(self.y, self.eta)


def _as_array(m) -> np.ndarray:
    if isinstance(m, NormalizedGame):
        return m.A
    if isinstance(m, PayoffMatrix2x2):
        return m.as_array()
    return np.asarray(m, dtype=float)


def step(s1: LearnerState, s2: LearnerState, m) -> tuple[LearnerState, LearnerState, np.ndarray, np.ndarray]:
    """One simultaneous update. Returns the new states and the strategies played."""
    A = _as_array(m)
    if A.shape != (s1.n, s2.n):
        raise ValueError(f"matrix shape {A.shape} does not match strategies ({s1.n}, {s2.n})")
    x1 = s1.strategy()
    x2 = s2.strategy()
    return (
        LearnerState(s1.y + A @ x2, s1.eta),
        LearnerState(s2.y - A.T @ x1, s2.eta),
        x1,
        x2,
    )


@numba.njit(cache=True)
def _gd2(y0, y1, eta):
    # n = 2 specialisation of gd_strategy; same operation order, so bitwise equal.
    mean = (y0 + y1) / 2.0
    if y0 <= y1:
        v = eta * (y0 - mean) + 0.5
        if v < 0.0:
            return 0.0, 1.0
    else:
        v = eta * (y1 - mean) + 0.5
        if v < 0.0:
            return 1.0, 0.0
    return eta * (y0 - mean) + 0.5, eta * (y1 - mean) + 0.5


@numba.njit(cache=True)
def _run2x2(A, y1_0, y2_0, eta, T, y1, y2, x1, x2):
    a, b, c, d = A[0, 0], A[0, 1], A[1, 0], A[1, 1]
    p0, p1 = y1_0[0], y1_0[1]
    q0, q1 = y2_0[0], y2_0[1]
    for t in range(T + 1):
        y1[t, 0] = p0
        y1[t, 1] = p1
        y2[t, 0] = q0
        y2[t, 1] = q1
        u0, u1 = _gd2(p0, p1, eta)
        v0, v1 = _gd2(q0, q1, eta)
        x1[t, 0] = u0
        x1[t, 1] = u1
        x2[t, 0] = v0
        x2[t, 1] = v1
        p0 = p0 + (a * v0 + b * v1)
        p1 = p1 + (c * v0 + d * v1)
        q0 = q0 - (a * u0 + c * u1)
        q1 = q1 - (b * u0 + d * u1)


@dataclass(frozen=True)
class Trajectory:
    """Records ``t = 0..T`` of a run: payoff vectors, strategies and utility.

    ``utility[t]`` is player 1's payoff ``x1^t . A x2^t``.
    """

    y1: np.ndarray
    y2: np.ndarray
    x1: np.ndarray
    x2: np.ndarray
    utility: np.ndarray
    game: NormalizedGame
    eta: float

    @property
    def T(self) -> int:
        return len(self.utility) - 1

    def __len__(self) -> int:
        return len(self.utility)


def simulate(
    game: NormalizedGame,
    y1_0,
    y2_0,
    eta: float,
    T: int,
    *,
    project: bool = True,
) -> Trajectory:
    """Run ``T`` iterations of simultaneous gradient descent.

    With ``project`` (the default) the initial vectors are first moved onto
    the dual lines; strategies are identical either way, only the payoff
    vectors differ by a constant multiple of ``(1, 1)``.
    """
    if T < 0:
        raise ValueError("T must be non-negative")
    if not eta > 0:
        raise ValueError(f"eta must be positive, got {eta}")
    y1_0 = np.asarray(y1_0, dtype=float)
    y2_0 = np.asarray(y2_0, dtype=float)
    if y1_0.shape != (2,) or y2_0.shape != (2,):
        raise ValueError("initial payoff vectors must have two entries")
    if project:
        from .dual import project_initial

        y1_0, y2_0 = project_initial(game, y1_0, y2_0)
    A = np.ascontiguousarray(game.A)
    n = T + 1
    y1 = np.empty((n, 2))
    y2 = np.empty((n, 2))
    x1 = np.empty((n, 2))
    x2 = np.empty((n, 2))
    _run2x2(A, y1_0, y2_0, float(eta), int(T), y1, y2, x1, x2)
    utility = np.einsum("ti,ij,tj->t", x1, A, x2)
    return Trajectory(y1, y2, x1, x2, utility, game, float(eta))
