"""2x2 zero-sum games: validation, Nash equilibria and normalization.

Entries are stored as exact rationals (:class:`fractions.Fraction`) so that the
normalization shift produces an exactly singular matrix and can be undone
bit-for-bit. The dynamics consume the float view from :meth:`PayoffMatrix2x2.as_array`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Real
from pathlib import Path
from typing import Any

import numpy as np


class GameError(ValueError):
    """Base class for invalid game inputs."""


class DegenerateGameError(GameError):
    """Raised when a + d - b - c = 0, so no unique mixed equilibrium exists."""


class AssumptionError(GameError):
    """Raised when a game cannot be brought into normal form."""

    def __init__(self, condition: str, detail: str = "") -> None:
        self.condition = condition
        msg = f"assumption violated: {condition}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


def _to_fraction(value: Any, name: str) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float) and not math.isfinite(value):
        raise GameError(f"entry {name} is not finite: {value!r}")
    try:
        return Fraction(value)
    except (TypeError, ValueError, OverflowError) as exc:
        raise GameError(f"entry {name} is not a finite real: {value!r}") from exc


@dataclass(frozen=True)
class PayoffMatrix2x2:
    """Row player's payoff matrix ``[[a, b], [c, d]]``.

    Player 1 (rows) receives ``x1 . A x2`` and player 2 receives its negation.
    """

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self) -> None:
        for name in "abcd":
            object.__setattr__(self, name, _to_fraction(getattr(self, name), name))

    @classmethod
    def from_rows(cls, rows: Any) -> PayoffMatrix2x2:
        try:
            (a, b), (c, d) = rows
        except (TypeError, ValueError):
            raise GameError(f"expected a 2x2 matrix, got {rows!r}") from None
        if isinstance(a, np.floating):
            a, b, c, d = (float(v) for v in (a, b, c, d))
        return cls(a, b, c, d)

    @property
    def entries(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    @property
    def determinant(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    @property
    def denominator(self) -> Fraction:
        """``a + d - b - c``, the common denominator of the Nash formulas."""
        return self.a + self.d - self.b - self.c

    def as_array(self) -> np.ndarray:
        return np.array([[float(self.a), float(self.b)], [float(self.c), float(self.d)]])

    def shifted(self, s: Fraction) -> PayoffMatrix2x2:
        return PayoffMatrix2x2(self.a + s, self.b + s, self.c + s, self.d + s)

    def negate_transpose(self) -> PayoffMatrix2x2:
        """Swap the players: ``A -> -A^T``."""
        return PayoffMatrix2x2(-self.a, -self.c, -self.b, -self.d)

    def swap_columns(self) -> PayoffMatrix2x2:
        return PayoffMatrix2x2(self.b, self.a, self.d, self.c)

    def max_abs(self) -> float:
        return float(max(abs(v) for v in self.entries))


MATCHING_PENNIES = PayoffMatrix2x2(1, -1, -1, 1)

PRESETS: dict[str, PayoffMatrix2x2] = {
    "matching-pennies": MATCHING_PENNIES,
}


@dataclass(frozen=True)
class NashPoint:
    x1: tuple[Fraction, Fraction]
    x2: tuple[Fraction, Fraction]

    def as_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return np.array([float(v) for v in self.x1]), np.array([float(v) for v in self.x2])

    @property
    def fully_mixed(self) -> bool:
        return all(0 < v < 1 for v in self.x1 + self.x2)


def nash_equilibrium(m: PayoffMatrix2x2) -> NashPoint:
    """Closed-form equilibrium from the indifference conditions.

    The second component of each pair is ``1 - first``, so pairs sum to one
    exactly.
    """
    den = m.denominator
    if den == 0:
        raise DegenerateGameError("a + d - b - c = 0: no unique mixed equilibrium")
    x11 = (m.d - m.c) / den
    x21 = (m.d - m.b) / den
    return NashPoint(x1=(x11, 1 - x11), x2=(x21, 1 - x21))


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class AssumptionReport:
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __str__(self) -> str:
        lines = []
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            lines.append(f"{mark}  {c.name}" + (f"  [{c.detail}]" if c.detail else ""))
        return "\n".join(lines)


def check_assumptions(m: PayoffMatrix2x2) -> AssumptionReport:
    """Evaluate every uniqueness / full-mixing precondition without raising."""
    a, b, c, d = m.entries
    den = m.denominator
    checks = [
        Check("a+d-b-c!=0", den != 0, f"a+d-b-c={den}"),
        Check("a!=b", a != b),
        Check("a!=c", a != c),
        Check("d!=b", d != b),
        Check("d!=c", d != c),
    ]
    if den == 0:
        checks.append(Check("fully-mixed", False, "equilibrium undefined"))
    else:
        ne = nash_equilibrium(m)
        values = f"x11={ne.x1[0]}, x21={ne.x2[0]}"
        checks.append(Check("fully-mixed", ne.fully_mixed, values))
    return AssumptionReport(tuple(checks))


@dataclass(frozen=True)
class NormalizedGame:
    """A game in the canonical singular form used by the dual-space analysis.

    ``matrix`` is obtained from ``original`` by adding ``shift`` to every
    entry, then optionally swapping players (``-A^T``), then optionally
    swapping the columns.
    """

    matrix: PayoffMatrix2x2
    shift: Fraction
    players_swapped: bool
    columns_relabeled: bool
    original: PayoffMatrix2x2
    _array: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        arr = self.matrix.as_array()
        arr.flags.writeable = False
        object.__setattr__(self, "_array", arr)

    @property
    def A(self) -> np.ndarray:
        return self._array

    def nash(self) -> NashPoint:
        return nash_equilibrium(self.matrix)

    def unapply(self) -> PayoffMatrix2x2:
        m = self.matrix
        if self.columns_relabeled:
            m = m.swap_columns()
        if self.players_swapped:
            m = m.negate_transpose()
        return m.shifted(-self.shift)


def normalize(m: PayoffMatrix2x2) -> NormalizedGame:
    """Shift to a singular matrix, then reorient so ``a, d > max(0, b, c)``.

    Raises:
        AssumptionError: naming the first violated precondition.
    """
    report = check_assumptions(m)
    if not report.ok:
        bad = report.checks[[c.passed for c in report.checks].index(False)]
        raise AssumptionError(bad.name, bad.detail)

    shift = -m.determinant / m.denominator
    out = m.shifted(shift)
    swapped = relabeled = False
    if out.a <= 0:
        out = out.negate_transpose()
        swapped = True
    if out.denominator < 0:
        out = out.swap_columns()
        relabeled = True

    a, b, c, d = out.entries
    if out.determinant != 0:
        raise AssumptionError("singular", f"det={out.determinant}")
    if not a > max(0, b, c):
        raise AssumptionError("a>max{0,b,c}", f"a={a}, b={b}, c={c}")
    if not d > max(0, b, c):
        raise AssumptionError("d>max{0,b,c}", f"d={d}, b={b}, c={c}")
    if not out.denominator > 0:
        raise AssumptionError("a+d-b-c>0", f"a+d-b-c={out.denominator}")
    return NormalizedGame(out, shift, swapped, relabeled, m)


def game_from_spec(spec: Any) -> PayoffMatrix2x2:
    """Build a matrix from a preset name or a ``{"a":..,"b":..,"c":..,"d":..}`` mapping."""
    if isinstance(spec, str):
        try:
            return PRESETS[spec]
        except KeyError:
            raise GameError(f"unknown preset {spec!r}; known: {sorted(PRESETS)}") from None
    if isinstance(spec, dict):
        missing = [k for k in "abcd" if k not in spec]
        if missing:
            raise GameError(f"game is missing entries {missing}")
        vals = {k: spec[k] for k in "abcd"}
        for k, v in vals.items():
            if isinstance(v, bool) or not isinstance(v, (Real, str)):
                raise GameError(f"entry {k} must be a number, got {v!r}")
        return PayoffMatrix2x2(**vals)
    raise GameError(f"game must be a preset name or an object with a,b,c,d; got {spec!r}")


def load_game(path: str | Path) -> PayoffMatrix2x2:
    with open(path, encoding="utf-8") as fh:
        return game_from_spec(json.load(fh))
