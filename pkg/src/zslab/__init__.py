"""Fixed-step gradient descent in two-player zero-sum games: simulation and dual-space geometry."""

from __future__ import annotations

from .dual import energy_coefficients, on_line, project_initial, to_z, total_energy
from .ftrl import Trajectory, simulate
from .game import (
    MATCHING_PENNIES,
    AssumptionError,
    DegenerateGameError,
    GameError,
    PayoffMatrix2x2,
    check_assumptions,
    nash_equilibrium,
    normalize,
)
from .metrics import boundary_entry_index, duality_gap, nash_gap, regret
from .partitions import Region, analyze, classify, summarize
from .simplex import gd_strategy, support_set

__all__ = [
    "MATCHING_PENNIES", "AssumptionError", "DegenerateGameError", "GameError", "PayoffMatrix2x2",
    "Region", "Trajectory", "analyze", "boundary_entry_index", "check_assumptions", "classify",
    "duality_gap", "energy_coefficients", "gd_strategy", "nash_equilibrium", "nash_gap", "normalize",
    "on_line", "project_initial", "regret", "simulate", "summarize", "support_set", "to_z", "total_energy",
]
__version__ = "0.1.0"
