"""CSV writers for trajectories and derived series.

Floats are written with ``repr`` so identical runs give byte-identical files.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .continuous import ContinuousRun
from .dual import energy_coefficients, project_initial, to_z, total_energy
from .ftrl import Trajectory
from .metrics import nash_gap_series, regret, time_average_strategy
from .partitions import PartitionReport, Region, classify_array

TRAJECTORY_COLUMNS = ("t", "y11", "y12", "y21", "y22", "x11", "x21", "z1", "z2", "utility", "energy", "region")
REGRET_COLUMNS = ("t", "regret", "regret2", "regret_per_sqrt_t")
AVERAGE_COLUMNS = ("t", "xbar11", "xbar21", "gap")
PARTITION_COLUMNS = ("j", "t_j", "region", "length", "r_j", "delta_r", "strategy_changes", "skipped")
CONTINUOUS_COLUMNS = ("t", "y11", "y21", "energy", "drift")


def fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isnan(v):
            return "nan"
        if v == int(v) and abs(v) < 2**53:
            return str(int(v)) if v != 0 else "0"
        return repr(v)
    return str(value)


def write_rows(path: str | Path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])
    return path


def _columns(*cols: np.ndarray):
    return zip(*(c.tolist() if isinstance(c, np.ndarray) else c for c in cols))


def write_trajectory(traj: Trajectory, path: str | Path) -> Path:
    p1, p2 = project_initial(traj.game, traj.y1, traj.y2)
    z1, z2 = to_z(traj.game, traj.eta, p1[:, 0], p2[:, 0])
    energy = total_energy(energy_coefficients(traj.game, traj.eta), (z1, z2))
    names = [Region(r).name for r in classify_array(z1, z2)]
    t = np.arange(len(traj))
    rows = _columns(
        t, traj.y1[:, 0], traj.y1[:, 1], traj.y2[:, 0], traj.y2[:, 1],
        traj.x1[:, 0], traj.x2[:, 0], z1, z2, traj.utility, energy, names,
    )
    return write_rows(path, TRAJECTORY_COLUMNS, rows)


def write_regret(traj: Trajectory, path: str | Path, player: int = 1) -> Path:
    r = regret(traj, player).regret
    t = np.arange(len(r))
    with np.errstate(divide="ignore", invalid="ignore"):
        per = np.where(t > 0, r / np.sqrt(t), np.nan)
    return write_rows(path, REGRET_COLUMNS, _columns(t, r, r * r, per))


def write_average(traj: Trajectory, path: str | Path) -> Path:
    m1, m2 = time_average_strategy(traj)
    gap = nash_gap_series(traj)
    t = np.arange(len(traj))
    return write_rows(path, AVERAGE_COLUMNS, _columns(t, m1[:, 0], m2[:, 0], gap))


def write_partitions(report: PartitionReport | None, path: str | Path) -> Path:
    rows = [] if report is None else ([r[c] for c in PARTITION_COLUMNS] for r in report.rows())
    return write_rows(path, PARTITION_COLUMNS, rows)


def write_continuous(run: ContinuousRun, path: str | Path) -> Path:
    drift = run.energy - run.energy[0]
    return write_rows(
        path, CONTINUOUS_COLUMNS, _columns(run.times, run.y1[:, 0], run.y2[:, 0], run.energy, drift)
    )


def read_columns(path: str | Path) -> dict[str, np.ndarray]:
    """Load a CSV written by this package; numeric columns become float arrays."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise ValueError(f"{path}: empty file")
    header, body = rows[0], rows[1:]
    out: dict[str, np.ndarray] = {}
    for i, name in enumerate(header):
        col = [r[i] for r in body]
        try:
            out[name] = np.array([float(v) for v in col])
        except ValueError:
            out[name] = np.array(col, dtype=object)
    return out
