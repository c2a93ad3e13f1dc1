"""Self-contained SVG figures (no pyplot global state)."""

from __future__ import annotations

from pathlib import Path

import matplotlib
import numpy as np
from matplotlib.figure import Figure

matplotlib.rcParams["svg.hashsalt"] = "zslab"

STRATEGY_COLOR = "#1f4e9c"
PAYOFF_COLOR = "#c0392b"


class SchemaError(ValueError):
    pass


def _require(data: dict, *cols: str) -> None:
    missing = [c for c in cols if c not in data]
    if missing:
        raise SchemaError(f"missing column(s): {', '.join(missing)}")
    if len(data[cols[0]]) == 0:
        raise SchemaError("no data rows")


def _thin(n: int, limit: int = 20000) -> slice:
    return slice(None, None, max(1, -(-n // limit)))


def _save(fig: Figure, out: str | Path) -> Path:
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out, format="svg", metadata={"Date": None})
    return out


def _unit_square(ax) -> None:
    ax.plot([0, 1, 1, 0, 0], [0, 0, 1, 1, 0], color="black", lw=0.8)
    for v in (0.0, 1.0):
        ax.axvline(v, ls="--", color="grey", lw=0.6)
        ax.axhline(v, ls="--", color="grey", lw=0.6)


def orbit(data: dict, out: str | Path, *, with_z: bool = True, title: str = "") -> Path:
    """Strategies ``(x11, x21)`` as squares, optionally with ``z`` points, over the unit square."""
    _require(data, "x11", "x21", *(("z1", "z2") if with_z else ()))
    sl = _thin(len(data["x11"]))
    data = {k: np.asarray(v)[sl] for k, v in data.items()}
    fig = Figure(figsize=(5, 5))
    ax = fig.add_subplot()
    _unit_square(ax)
    if with_z:
        ax.plot(data["z1"], data["z2"], color=PAYOFF_COLOR, lw=0.3, alpha=0.5)
        ax.scatter(data["z1"], data["z2"], s=4, color=PAYOFF_COLOR, label="payoff vector $z^t$")
    ax.scatter(data["x11"], data["x21"], s=6, marker="s", color=STRATEGY_COLOR, label="strategies $x^t$")
    ax.set_xlabel("$x_{11}$" if not with_z else "$z_1$ / $x_{11}$")
    ax.set_ylabel("$x_{21}$" if not with_z else "$z_2$ / $x_{21}$")
    ax.set_aspect("equal", adjustable="datalim")
    ax.legend(loc="upper right", fontsize=7)
    if title:
        ax.set_title(title)
    return _save(fig, out)


def line(data: dict, column: str, out: str | Path, *, x: str = "t", title: str = "") -> Path:
    _require(data, x, column)
    sl = _thin(len(data[x]))
    xs = np.asarray(data[x], dtype=float)[sl]
    ys = np.asarray(data[column], dtype=float)[sl]
    fig = Figure(figsize=(5, 3.5))
    ax = fig.add_subplot()
    ax.plot(xs, ys, lw=0.8, color=STRATEGY_COLOR)
    ax.set_xlabel(x)
    ax.set_ylabel(column)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return _save(fig, out)


def plot_kind(data: dict, kind: str, out: str | Path) -> Path:
    """Dispatch ``orbit``, ``strategies`` or ``line:<column>``."""
    if kind == "orbit":
        return orbit(data, out)
    if kind == "strategies":
        return orbit(data, out, with_z=False)
    if kind.startswith("line:"):
        return line(data, kind.split(":", 1)[1], out)
    raise SchemaError(f"unknown plot kind {kind!r}; use orbit, strategies or line:<column>")
