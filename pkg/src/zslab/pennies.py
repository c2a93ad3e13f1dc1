"""Exact trajectory of Matching Pennies with eta = 1 and y1 = y2 = (1, 0).

Iteration ``t`` is written uniquely as ``t = n(n+1)/2 + k`` with ``0 <= k <= n``.
Within a block of fixed ``n`` both players play pure strategies and the payoff
vectors move linearly in ``k``; the block parity decides which vertex is played.
Everything here is integer or half-integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .game import MATCHING_PENNIES, normalize
from .ftrl import simulate
from .metrics import regret

ETA = 1.0
Y0 = (1.0, 0.0)


@dataclass(frozen=True)
class TriangularIndex:
    n: int
    k: int

    @property
    def t(self) -> int:
        return self.n * (self.n + 1) // 2 + self.k


def triangular_index(t: int) -> TriangularIndex:
    if t < 0:
        raise ValueError("t must be non-negative")
    n = (math.isqrt(8 * t + 1) - 1) // 2
    return TriangularIndex(n, t - n * (n + 1) // 2)


def exact_payoff_vectors(t: int) -> tuple[tuple[int, int], tuple[int, int]]:
    ti = triangular_index(t)
    n, k = ti.n, ti.k
    forms = [
        (1 + k, -k),
        (1 + n - k, -n + k),
        (-k, 1 + k),
        (-n + k, 1 + n - k),
    ]
    r = n % 4
    return forms[r], forms[(r + 1) % 4]


def exact_cumulative_utility(t: int) -> int:
    """Player 1's utility summed over iterations ``0..t``."""
    ti = triangular_index(t)
    n, k = ti.n, ti.k
    if n % 2 == 0:
        return 1 - n // 2 + k
    return (n - 1) // 2 - k


def exact_regret(t: int) -> Fraction:
    """Player 1's regret through iteration ``t``."""
    ti = triangular_index(t)
    n, k = ti.n, ti.k
    half = Fraction(n, 2)
    if k < n:
        table = (half, half - Fraction(1, 2), half + 1, half + Fraction(1, 2))
    else:
        table = (half, half + Fraction(3, 2), half + 1, half + Fraction(1, 2))
    return table[n % 4]


@dataclass(frozen=True)
class PenniesCheck:
    t_max: int
    checked: int
    first_divergence: int | None
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.first_divergence is None


def _exact_tables(t_max: int) -> dict[str, np.ndarray]:
    """Vectorized form of the exact formulas for ``t = 0..t_max`` (float64, exact)."""
    t = np.arange(t_max + 1, dtype=np.int64)
    n = ((np.sqrt(8 * t + 1) - 1) // 2).astype(np.int64)
    n -= n * (n + 1) // 2 > t
    n += (n + 1) * (n + 2) // 2 <= t
    k = t - n * (n + 1) // 2
    r = n % 4
    first = np.stack([1 + k, 1 + n - k, -k, -n + k])
    second = np.stack([-k, -n + k, 1 + k, 1 + n - k])
    cols = np.arange(len(t))
    y1 = np.stack([first[r, cols], second[r, cols]], axis=1)
    r2 = (r + 1) % 4
    y2 = np.stack([first[r2, cols], second[r2, cols]], axis=1)
    util = np.where(n % 2 == 0, 1 - n // 2 + k, (n - 1) // 2 - k)
    half = n / 2.0
    inner = np.select([r == 0, r == 1, r == 2], [half, half - 0.5, half + 1], half + 0.5)
    at_end = np.select([r == 0, r == 1, r == 2], [half, half + 1.5, half + 1], half + 0.5)
    reg = np.where(k < n, inner, at_end)
    return {"y1": y1.astype(float), "y2": y2.astype(float), "utility": util.astype(float), "regret": reg}


def verify_pennies(t_max: int) -> PenniesCheck:
    """Compare the simulator against the exact formulas for ``t = 0..t_max``.

    Payoff vectors, cumulative utility and regret must agree exactly.
    """
    game = normalize(MATCHING_PENNIES)
    traj = simulate(game, Y0, Y0, ETA, t_max, project=False)
    exact = _exact_tables(t_max)
    got = {
        "y1": traj.y1,
        "y2": traj.y2,
        "utility": np.cumsum(traj.utility),
        "regret": regret(traj, 1).regret,
    }
    bad = np.zeros(t_max + 1, dtype=bool)
    for key, want in exact.items():
        diff = got[key] != want
        bad |= diff.any(axis=1) if diff.ndim == 2 else diff
    if not bad.any():
        return PenniesCheck(t_max, t_max + 1, None)
    t = int(np.flatnonzero(bad)[0])
    y1, y2 = exact_payoff_vectors(t)
    detail = (
        f"t={t}: y1={tuple(got['y1'][t])} y2={tuple(got['y2'][t])} expected {y1} {y2}; "
        f"utility={got['utility'][t]} expected {exact_cumulative_utility(t)}; "
        f"regret={got['regret'][t]} expected {exact_regret(t)}"
    )
    return PenniesCheck(t_max, t + 1, t, detail)
