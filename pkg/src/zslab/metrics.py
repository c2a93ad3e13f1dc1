"""Regret, time-average play and boundary detection over trajectories."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ftrl import Trajectory


@dataclass(frozen=True)
class RegretSeries:
    """Per-iteration regret through ``t`` (sums over ``s = 0..t``).

    ``best`` is the cumulative payoff of the best pure strategy in hindsight;
    on the simplex a linear objective peaks at a vertex, so no inner
    optimization is needed.
    """

    best: np.ndarray
    realized: np.ndarray
    regret: np.ndarray

    def __len__(self) -> int:
        return len(self.regret)


def _payoffs(traj: Trajectory, player: int) -> tuple[np.ndarray, np.ndarray]:
    A = traj.game.A
    if player == 1:
        return traj.x2 @ A.T, traj.utility
    if player == 2:
        return -(traj.x1 @ A), -traj.utility
    raise ValueError(f"player must be 1 or 2, got {player}")


def regret(traj: Trajectory, player: int = 1) -> RegretSeries:
    vectors, realized = _payoffs(traj, player)
    best = np.cumsum(vectors, axis=0).max(axis=1)
    cum = np.cumsum(realized)
    return RegretSeries(best, cum, best - cum)


def regret_at(traj: Trajectory, t: int, player: int = 1) -> float:
    """Regret through ``t`` recomputed from scratch (reference for :func:`regret`)."""
    vectors, realized = _payoffs(traj, player)
    best = max(float(np.sum(vectors[: t + 1, j])) for j in range(vectors.shape[1]))
    return best - float(np.sum(realized[: t + 1]))


def time_average_strategy(traj: Trajectory) -> tuple[np.ndarray, np.ndarray]:
    """Running means ``(1/(t+1)) sum_{s<=t} x^s`` for both players, shape ``(T+1, 2)``."""
    counts = np.arange(1, len(traj) + 1)[:, None]
    return np.cumsum(traj.x1, axis=0) / counts, np.cumsum(traj.x2, axis=0) / counts


def nash_gap(traj: Trajectory, T: int | None = None) -> float:
    """Sup-norm distance from the time-average strategies through ``T`` to the equilibrium."""
    T = traj.T if T is None else T
    if not 0 <= T <= traj.T:
        raise ValueError(f"T={T} outside recorded horizon 0..{traj.T}")
    ne1, ne2 = traj.game.nash().as_arrays()
    m1 = traj.x1[: T + 1].mean(axis=0)
    m2 = traj.x2[: T + 1].mean(axis=0)
    return float(max(np.abs(m1 - ne1).max(), np.abs(m2 - ne2).max()))


def nash_gap_series(traj: Trajectory) -> np.ndarray:
    ne1, ne2 = traj.game.nash().as_arrays()
    m1, m2 = time_average_strategy(traj)
    return np.maximum(np.abs(m1 - ne1).max(axis=1), np.abs(m2 - ne2).max(axis=1))


def duality_gap(traj: Trajectory, T: int | None = None) -> float:
    """``max_x1 x1.A xbar2 - min_x2 xbar1.A x2`` for the averages through ``T``."""
    T = traj.T if T is None else T
    A = traj.game.A
    m1 = traj.x1[: T + 1].mean(axis=0)
    m2 = traj.x2[: T + 1].mean(axis=0)
    return float((A @ m2).max() - (m1 @ A).min())


def both_mixed(traj: Trajectory) -> np.ndarray:
    """True where neither player's strategy has a 0/1 coordinate."""
    p = traj.x1[:, 0]
    q = traj.x2[:, 0]
    return (p > 0.0) & (p < 1.0) & (q > 0.0) & (q < 1.0)


def boundary_entry_index(traj: Trajectory) -> int | None:
    """Smallest ``B`` after which some player is always on the boundary.

    Returns ``None`` when the final record still has both players fully mixed.
    """
    mixed = both_mixed(traj)
    if not mixed.any():
        return 0
    last = int(np.flatnonzero(mixed)[-1])
    if last == traj.T:
        return None
    return last + 1
