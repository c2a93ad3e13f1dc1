"""Explicit small-step integration of continuous-time gradient descent.

The continuous dynamics ``dy1/dt = A x2``, ``dy2/dt = -A^T x1`` conserve the
total conjugate energy. Stepping them with ``y <- y + dt * (dy/dt)`` gives the
discrete algorithm at ``dt = 1``; as ``dt`` shrinks the per-unit-time energy
gain shrinks with it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dual import energy_coefficients, project_initial, to_z, total_energy
from .game import NormalizedGame
from .simplex import gd_strategy


@dataclass(frozen=True)
class ContinuousRun:
    """States at times ``0, dt, 2 dt, ..., horizon``."""

    dt: float
    times: np.ndarray
    y1: np.ndarray
    y2: np.ndarray
    energy: np.ndarray
    game: NormalizedGame
    eta: float

    def at(self, time: float) -> int:
        """Index of the sample at ``time`` (must be a multiple of ``dt``)."""
        idx = int(round(time / self.dt))
        if abs(idx * self.dt - time) > 1e-9 * max(1.0, abs(time)):
            raise ValueError(f"time {time} is not a multiple of dt={self.dt}")
        return idx


def integrate(
    game: NormalizedGame,
    y0,
    eta: float,
    horizon: float,
    dt: float,
    *,
    project: bool = True,
) -> ContinuousRun:
    if not dt > 0:
        raise ValueError("dt must be positive")
    if dt > 1:
        raise ValueError("dt must not exceed 1")
    steps = int(round(horizon / dt))
    if abs(steps * dt - horizon) > 1e-9 * max(1.0, horizon):
        raise ValueError(f"horizon {horizon} is not a multiple of dt={dt}")
    y1, y2 = (np.asarray(v, dtype=float) for v in y0)
    if project:
        y1, y2 = project_initial(game, y1, y2)
    A = game.A
    ys1 = np.empty((steps + 1, 2))
    ys2 = np.empty((steps + 1, 2))
    ys1[0], ys2[0] = y1, y2
    for s in range(steps):
        x1 = gd_strategy(y1, eta)
        x2 = gd_strategy(y2, eta)
        y1 = y1 + dt * (A @ x2)
        y2 = y2 - dt * (A.T @ x1)
        ys1[s + 1], ys2[s + 1] = y1, y2
    p1, p2 = project_initial(game, ys1, ys2)
    z = to_z(game, eta, p1[:, 0], p2[:, 0])
    energy = total_energy(energy_coefficients(game, eta), z)
    return ContinuousRun(dt, np.arange(steps + 1) * dt, ys1, ys2, energy, game, eta)


def energy_drift(run: ContinuousRun) -> float:
    return float(run.energy[-1] - run.energy[0])


def rotation_period(z1, z2) -> int | None:
    """First index at which ``z`` has wound once around the center of the unit square.

    ``None`` if no full turn happens within the series.
    """
    theta = np.unwrap(np.arctan2(np.asarray(z2) - 0.5, np.asarray(z1) - 0.5))
    done = np.flatnonzero(np.abs(theta - theta[0]) >= 2 * np.pi)
    return int(done[0]) if done.size else None
