"""Dual-space geometry of 2x2 gradient descent.

For a normalized (singular) game every payoff increment of player 1 is
orthogonal to ``[d-c, a-b]`` and every increment of player 2 to ``[d-b, a-c]``.
After removing the all-ones component, each player's payoff vector lives on a
line and is described by one scalar. The affine rescaling of that scalar,
``z``, satisfies ``x_i1 = clip(z_i, 0, 1)``, and the convex conjugate of the
regularizer becomes a piecewise function of ``z``: linear below 0, quadratic on
``(0, 1)``, linear above 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .game import NormalizedGame
from .simplex import gd_strategy, regularized_value, support_set


def _abcd(game: NormalizedGame) -> tuple[float, float, float, float]:
    m = game.matrix
    return float(m.a), float(m.b), float(m.c), float(m.d)


def dual_normals(game: NormalizedGame) -> tuple[np.ndarray, np.ndarray]:
    """Vectors orthogonal to every payoff increment of player 1 and player 2."""
    a, b, c, d = _abcd(game)
    return np.array([d - c, a - b]), np.array([d - b, a - c])


@dataclass(frozen=True)
class DualTransform:
    slope1: float
    slope2: float
    scale1: float
    scale2: float

    @classmethod
    def of(cls, game: NormalizedGame, eta: float) -> DualTransform:
        a, b, c, d = _abcd(game)
        if a == b or a == c:
            raise ValueError("dual transform needs a != b and a != c")
        s1 = (c - d) / (a - b)
        s2 = (b - d) / (a - c)
        return cls(s1, s2, eta * (1.0 - s1) / 2.0, eta * (1.0 - s2) / 2.0)

    @property
    def slopes(self) -> tuple[float, float]:
        return (self.slope1, self.slope2)

    @property
    def scales(self) -> tuple[float, float]:
        return (self.scale1, self.scale2)


@dataclass(frozen=True)
class ZPoint:
    z1: float
    z2: float

    def __iter__(self):
        yield self.z1
        yield self.z2


def _project(y: np.ndarray, normal: np.ndarray) -> np.ndarray:
    lam = np.asarray((y @ normal) / normal.sum())
    return y - lam[..., None]


def project_initial(game: NormalizedGame, y1_0, y2_0) -> tuple[np.ndarray, np.ndarray]:
    """Shift each payoff vector along ``(1, 1)`` onto its dual line.

    Works row-wise on ``(T, 2)`` arrays as well. Strategies are unchanged since
    gradient descent ignores constant shifts.
    """
    n1, n2 = dual_normals(game)
    y1 = np.asarray(y1_0, dtype=float)
    y2 = np.asarray(y2_0, dtype=float)
    return _project(y1, n1), _project(y2, n2)


def to_z(game: NormalizedGame, eta: float, y11, y21) -> ZPoint | tuple[np.ndarray, np.ndarray]:
    """Map first payoff coordinates of on-line vectors to ``z``.

    Scalars give a :class:`ZPoint`; arrays give a pair of arrays.
    """
    tr = DualTransform.of(game, eta)
    z1 = tr.scale1 * np.asarray(y11, dtype=float) + 0.5
    z2 = tr.scale2 * np.asarray(y21, dtype=float) + 0.5
    if z1.ndim == 0:
        return ZPoint(float(z1), float(z2))
    return z1, z2


def strategy_from_z(z) -> tuple:
    z1, z2 = z
    return np.clip(z1, 0.0, 1.0), np.clip(z2, 0.0, 1.0)


def conjugate_energy(y, eta: float) -> float:
    """Conjugate of ``||x||^2 / (2 eta)`` on the simplex, via the maximizer."""
    y = np.asarray(y, dtype=float)
    return regularized_value(y, gd_strategy(y, eta), eta)


def conjugate_energy_closed_form(y, eta: float) -> float:
    """Same value, expanded over the support set without forming ``x``."""
    y = np.asarray(y, dtype=float)
    ys = y[list(support_set(y, eta))]
    k = ys.size
    total = ys.sum()
    return float(
        eta / 2.0 * (ys @ ys) + total / k - eta / 2.0 * total**2 / k - 1.0 / (2.0 * eta * k)
    )


@dataclass(frozen=True)
class PiecewiseEnergy:
    """Per-player coefficients of the conjugate written in ``z``.

    Player ``i`` (index 0 or 1) has energy::

        alpha0[i] z - beta0[i]                   if z <= 0
        alpha1[i] z - beta1[i]                   if z >= 1
        gamma[i] z^2 + alpha[i] z - beta[i]      otherwise
    """

    alpha0: tuple[float, float]
    alpha1: tuple[float, float]
    gamma: tuple[float, float]
    alpha: tuple[float, float]
    beta0: tuple[float, float]
    beta1: tuple[float, float]
    beta: tuple[float, float]
    eta: float


def energy_coefficients(game: NormalizedGame, eta: float) -> PiecewiseEnergy:
    tr = DualTransform.of(game, eta)
    cols: dict[str, list[float]] = {k: [] for k in ("a0", "a1", "g", "a", "b0", "b1", "b")}
    for s, scale in zip(tr.slopes, tr.scales):
        # On the line y = (u, s u) with u = (z - 1/2) / scale:
        #   pure first strategy:  u - 1/(2 eta)
        #   pure second strategy: s u - 1/(2 eta)
        #   mixed: eta/4 (1-s)^2 u^2 + (1+s) u / 2 - 1/(4 eta)
        #        = (z - 1/2)^2 / eta + k (z - 1/2) - 1/(4 eta),  k = (1+s) / (eta (1-s))
        k = (1.0 + s) / (eta * (1.0 - s))
        cols["g"].append(1.0 / eta)
        cols["a"].append(k - 1.0 / eta)
        cols["b"].append(k / 2.0)
        cols["a1"].append(1.0 / scale)
        cols["b1"].append(1.0 / (2.0 * scale) + 1.0 / (2.0 * eta))
        cols["a0"].append(s / scale)
        cols["b0"].append(s / (2.0 * scale) + 1.0 / (2.0 * eta))
    t = {k: tuple(v) for k, v in cols.items()}
    return PiecewiseEnergy(
        alpha0=t["a0"], alpha1=t["a1"], gamma=t["g"], alpha=t["a"],
        beta0=t["b0"], beta1=t["b1"], beta=t["b"], eta=eta,
    )


def piecewise_energy(coeffs: PiecewiseEnergy, z, player: int):
    """Energy of one player (1 or 2) at ``z``; vectorized over arrays."""
    i = player - 1
    if i not in (0, 1):
        raise ValueError(f"player must be 1 or 2, got {player}")
    z = np.asarray(z, dtype=float)
    low = coeffs.alpha0[i] * z - coeffs.beta0[i]
    high = coeffs.alpha1[i] * z - coeffs.beta1[i]
    mid = coeffs.gamma[i] * z * z + coeffs.alpha[i] * z - coeffs.beta[i]
    out = np.where(z <= 0.0, low, np.where(z >= 1.0, high, mid))
    return float(out) if out.ndim == 0 else out


def total_energy(coeffs: PiecewiseEnergy, z):
    z1, z2 = z
    return piecewise_energy(coeffs, z1, 1) + piecewise_energy(coeffs, z2, 2)


def z_series(traj) -> tuple[np.ndarray, np.ndarray]:
    """``z`` for every record of a trajectory (payoffs projected first)."""
    y1, y2 = project_initial(traj.game, traj.y1, traj.y2)
    return to_z(traj.game, traj.eta, y1[:, 0], y2[:, 0])


def energy_series(traj, coeffs: PiecewiseEnergy | None = None) -> np.ndarray:
    if coeffs is None:
        coeffs = energy_coefficients(traj.game, traj.eta)
    return total_energy(coeffs, z_series(traj))


def on_line(game: NormalizedGame, eta: float, y11: float, y21: float) -> tuple[np.ndarray, np.ndarray]:
    """Full payoff vectors on the dual lines with the given first coordinates."""
    tr = DualTransform.of(game, eta)
    return np.array([y11, tr.slope1 * y11]), np.array([y21, tr.slope2 * y21])
