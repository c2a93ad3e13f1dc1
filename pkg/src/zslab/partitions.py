"""Region classification of z-points and per-partition statistics.

Outside the unit square the plane splits into four regions that the dual
trajectory visits clockwise::

    Z0: z1 <  1, z2 >= 1      (top)
    Z1: z1 >= 1, z2 >  0      (right)
    Z2: z1 >  0, z2 <= 0      (bottom)
    Z3: z1 <= 0, z2 <  1      (left)

Everything else is the open unit square, where both players are fully mixed.
A partition is a maximal run of iterations spent in one region after the first
entry into Z0 following the boundary-entry index.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .dual import PiecewiseEnergy, energy_coefficients, total_energy, z_series
from .ftrl import Trajectory


class Region(IntEnum):
    Z0 = 0
    Z1 = 1
    Z2 = 2
    Z3 = 3
    INTERIOR = 4


class NoZ0EntryError(ValueError):
    """The horizon ends before the trajectory reaches Z0 after ``B``."""


def classify(z) -> Region:
    z1, z2 = z
    if z1 < 1 and z2 >= 1:
        return Region.Z0
    if z1 >= 1 and z2 > 0:
        return Region.Z1
    if z1 > 0 and z2 <= 0:
        return Region.Z2
    if z1 <= 0 and z2 < 1:
        return Region.Z3
    return Region.INTERIOR


def classify_array(z1: np.ndarray, z2: np.ndarray) -> np.ndarray:
    z1 = np.asarray(z1)
    z2 = np.asarray(z2)
    return np.select(
        [
            (z1 < 1) & (z2 >= 1),
            (z1 >= 1) & (z2 > 0),
            (z1 > 0) & (z2 <= 0),
            (z1 <= 0) & (z2 < 1),
        ],
        [Region.Z0, Region.Z1, Region.Z2, Region.Z3],
        default=Region.INTERIOR,
    ).astype(np.int8)


@dataclass(frozen=True)
class PartitionReport:
    """Break points ``t_0 < ... < t_k`` (``t_k = T + 1``) and per-partition data.

    Array ``j`` entries describe the iterations ``t_j .. t_{j+1} - 1``. Fields
    that need ``t_{j+1}`` to be a recorded iteration (energy delta, strategy
    changes across the last step) are NaN / -1 for the final partition when it
    is cut off by the horizon.
    """

    breaks: np.ndarray
    region: np.ndarray
    length: np.ndarray
    energy: np.ndarray | None = None
    delta_energy: np.ndarray | None = None
    strategy_changes: np.ndarray | None = None
    advance: np.ndarray | None = None

    @property
    def count(self) -> int:
        return len(self.region)

    @property
    def complete(self) -> int:
        """Partitions whose end lies inside the horizon (all but the last)."""
        return max(self.count - 1, 0)

    @property
    def skipped(self) -> np.ndarray:
        if self.advance is None:
            return np.zeros(self.count, dtype=bool)
        return self.advance == 2

    def rows(self):
        for j in range(self.count):
            yield {
                "j": j,
                "t_j": int(self.breaks[j]),
                "region": Region(int(self.region[j])).name,
                "length": int(self.length[j]),
                "r_j": float(self.energy[j]) if self.energy is not None else float("nan"),
                "delta_r": float(self.delta_energy[j]) if self.delta_energy is not None else float("nan"),
                "strategy_changes": int(self.strategy_changes[j]) if self.strategy_changes is not None else -1,
                "skipped": int(bool(self.skipped[j])),
            }


def break_points(regions: np.ndarray, B: int) -> PartitionReport:
    """Locate the break points of a region-label series from iteration ``B`` on."""
    regions = np.asarray(regions)
    T = len(regions) - 1
    if B is None or B > T:
        raise NoZ0EntryError("boundary entry not found within the horizon")
    hits = np.flatnonzero(regions[B:] == Region.Z0)
    if hits.size == 0:
        raise NoZ0EntryError(f"no Z0 entry in horizon after B={B}")
    t0 = B + int(hits[0])
    tail = regions[t0:]
    changes = t0 + 1 + np.flatnonzero(tail[1:] != tail[:-1])
    breaks = np.concatenate([[t0], changes, [T + 1]]).astype(np.int64)
    return PartitionReport(
        breaks=breaks,
        region=regions[breaks[:-1]].astype(np.int8),
        length=np.diff(breaks),
    )


def partition_stats(
    traj: Trajectory, coeffs: PiecewiseEnergy | None, report: PartitionReport
) -> PartitionReport:
    """Fill energies ``r_j``, their increments, strategy-change counts and region advances."""
    if coeffs is None:
        coeffs = energy_coefficients(traj.game, traj.eta)
    z1, z2 = z_series(traj)
    starts = report.breaks[:-1]
    ends = report.breaks[1:]
    T = traj.T

    energy = total_energy(coeffs, (z1[starts], z2[starts]))
    delta = np.full(report.count, np.nan)
    delta[:-1] = np.diff(energy)

    changed = np.any(traj.x1[1:] != traj.x1[:-1], axis=1) | np.any(traj.x2[1:] != traj.x2[:-1], axis=1)
    csum = np.concatenate([[0], np.cumsum(changed)])
    # a change at t compares x^t with x^{t+1}, so the horizon caps t at T-1
    counts = (csum[np.minimum(ends, T)] - csum[starts]).astype(np.int64)

    advance = np.zeros(report.count, dtype=np.int8)
    advance[1:] = (report.region[1:].astype(int) - report.region[:-1].astype(int)) % 4
    return PartitionReport(
        breaks=report.breaks,
        region=report.region,
        length=report.length,
        energy=energy,
        delta_energy=delta,
        strategy_changes=counts,
        advance=advance,
    )


def analyze(traj: Trajectory, B: int | None) -> PartitionReport:
    z1, z2 = z_series(traj)
    skeleton = break_points(classify_array(z1, z2), B)
    return partition_stats(traj, energy_coefficients(traj.game, traj.eta), skeleton)


@dataclass(frozen=True)
class LinearFit:
    slope: float
    intercept: float
    r2: float


def linear_fit(x, y) -> LinearFit:
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    return LinearFit(float(slope), float(intercept), r2)


@dataclass(frozen=True)
class GeometrySummary:
    """Empirical constants of a run, measured after the burn-in partitions."""

    partitions: int
    kappa: int
    kappa_first_decade: int
    kappa_last_decade: int
    energy_fit: LinearFit
    time_fit: LinearFit
    delta_min: float
    delta_max: float
    length_ratio_min: float
    length_ratio_max: float
    skips: int


def summarize(report: PartitionReport, burn_in: int = 10, upto: int | None = None) -> GeometrySummary:
    """Fit ``r_j ~ j`` and ``t_j ~ j^2`` and collect the per-partition constants.

    Only complete partitions ``burn_in <= j < upto`` are used. The decades are
    ``[burn_in, 10 burn_in)`` and ``[upto / 10, upto)``.
    """
    if report.energy is None:
        raise ValueError("report has no statistics; run partition_stats first")
    k = report.complete if upto is None else min(upto, report.complete)
    if k - burn_in < 3:
        raise ValueError(f"only {report.complete} complete partitions; need more than burn-in {burn_in}")
    j = np.arange(burn_in, k)
    changes = report.strategy_changes[j]
    first = changes[: max(1, min(len(j), 9 * burn_in))]
    last = report.strategy_changes[max(burn_in, k // 10) : k]
    r = report.energy[j]
    delta = report.delta_energy[j]
    ratio = report.length[j] / r
    return GeometrySummary(
        partitions=report.complete,
        kappa=int(changes.max()),
        kappa_first_decade=int(first.max()),
        kappa_last_decade=int(last.max()),
        energy_fit=linear_fit(j, r),
        time_fit=linear_fit(j.astype(float) ** 2, report.breaks[j]),
        delta_min=float(delta.min()),
        delta_max=float(delta.max()),
        length_ratio_min=float(ratio.min()),
        length_ratio_max=float(ratio.max()),
        skips=int(np.sum(report.skipped[burn_in:k])),
    )
