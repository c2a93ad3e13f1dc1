"""Run configurations, single runs, sweeps and the verification suites behind the CLI."""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from . import outputs, plots
from .dual import (
    DualTransform,
    conjugate_energy,
    energy_coefficients,
    energy_series,
    on_line,
    piecewise_energy,
    z_series,
)
from .ftrl import Trajectory, simulate
from .game import (
    MATCHING_PENNIES,
    GameError,
    NormalizedGame,
    PayoffMatrix2x2,
    game_from_spec,
    normalize,
)
from .metrics import both_mixed, boundary_entry_index, regret
from .oracles import exhaustive_support, simplex_qp_bisection
from .partitions import LinearFit, NoZ0EntryError, analyze, linear_fit, summarize
from .pennies import verify_pennies
from .simplex import gd_strategy, support_set

DEFAULT_Y0 = (0.2, -0.3)


class ConfigError(ValueError):
    """Malformed run or sweep configuration."""


# --------------------------------------------------------------------------- config


@dataclass(frozen=True)
class RunConfig:
    game: PayoffMatrix2x2
    eta: float
    iterations: int
    outputs: Path
    y0: tuple[tuple[float, float], tuple[float, float]] | None = None
    seed: int = 0
    project: bool = True
    game_label: str = ""

    def initial_vectors(self, game: NormalizedGame) -> tuple[np.ndarray, np.ndarray]:
        if self.y0 is not None:
            return np.array(self.y0[0], dtype=float), np.array(self.y0[1], dtype=float)
        return on_line(game, self.eta, *DEFAULT_Y0)


def _positive(data: dict, key: str, kind=float):
    if key not in data:
        raise ConfigError(f"field {key!r}: required")
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"field {key!r}: expected a number, got {value!r}")
    if kind is int and int(value) != value:
        raise ConfigError(f"field {key!r}: expected an integer, got {value!r}")
    if not value > 0:
        raise ConfigError(f"field {key!r}: must be positive, got {value!r}")
    return kind(value)


def _game(spec: Any, key: str = "game") -> tuple[PayoffMatrix2x2, str]:
    try:
        m = game_from_spec(spec)
    except GameError as exc:
        raise ConfigError(f"field {key!r}: {exc}") from None
    label = spec if isinstance(spec, str) else ",".join(str(spec[k]) for k in "abcd")
    return m, label


def _y0(value: Any):
    try:
        (p, q), (r, s) = value
        out = ((float(p), float(q)), (float(r), float(s)))
    except (TypeError, ValueError):
        raise ConfigError(f"field 'y0': expected two pairs of numbers, got {value!r}") from None
    if not np.all(np.isfinite(out)):
        raise ConfigError("field 'y0': entries must be finite")
    return out


def parse_run_config(data: dict, base: Path | None = None) -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    game, label = _game(data.get("game", "matching-pennies"))
    out = Path(data.get("outputs", "out"))
    if base is not None and not out.is_absolute():
        out = base / out
    return RunConfig(
        game=game,
        eta=_positive(data, "eta"),
        iterations=_positive(data, "iterations", int),
        outputs=out,
        y0=_y0(data["y0"]) if data.get("y0") is not None else None,
        seed=int(data.get("seed", 0)),
        project=bool(data.get("project", True)),
        game_label=label,
    )


def read_json(path: str | Path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from None


# --------------------------------------------------------------------------- single run


def running_max(values: np.ndarray) -> np.ndarray:
    return np.maximum.accumulate(values)


def regret_squared_fit(traj: Trajectory, player: int = 1) -> LinearFit:
    """Linear fit of the squared running-maximum regret against ``t``."""
    env = running_max(regret(traj, player).regret)
    return linear_fit(np.arange(len(env)), env**2)


@dataclass
class SimulationResult:
    trajectory: Trajectory
    files: dict[str, Path] = field(default_factory=dict)
    boundary: int | None = None
    partitions: int = 0


def run_simulation(cfg: RunConfig) -> SimulationResult:
    game = normalize(cfg.game)
    y1, y2 = cfg.initial_vectors(game)
    traj = simulate(game, y1, y2, cfg.eta, cfg.iterations, project=cfg.project)
    out = cfg.outputs
    files = {
        "trajectory": outputs.write_trajectory(traj, out / "trajectory.csv"),
        "regret": outputs.write_regret(traj, out / "regret.csv"),
        "average": outputs.write_average(traj, out / "average.csv"),
    }
    B = boundary_entry_index(traj)
    try:
        report = analyze(traj, B)
    except NoZ0EntryError:
        report = None
    files["partitions"] = outputs.write_partitions(report, out / "partitions.csv")

    traj_cols = {"x11": traj.x1[:, 0], "x21": traj.x2[:, 0]}
    r = regret(traj, 1).regret
    reg_cols = {"t": np.arange(len(r)), "regret": r, "regret2": r * r}
    title = f"eta={cfg.eta:g}, T={cfg.iterations}"
    files["strategies_svg"] = plots.orbit(traj_cols, out / "strategies.svg", with_z=False, title="Player strategies, " + title)
    files["regret_svg"] = plots.line(reg_cols, "regret", out / "regret.svg", title="Player 1 regret")
    files["regret2_svg"] = plots.line(reg_cols, "regret2", out / "regret_squared.svg", title="Player 1 regret squared")
    return SimulationResult(traj, files, B, 0 if report is None else report.complete)


# --------------------------------------------------------------------------- run summary


@dataclass(frozen=True)
class RunSummary:
    final_regret: float
    max_ratio: float
    median_ratio: float
    boundary: int | None
    mixed_after_boundary: int
    partitions: int
    kappa: int
    kappa_first_decade: int
    kappa_last_decade: int
    energy_fit: LinearFit
    time_fit: LinearFit
    skips: int
    min_energy_step: float
    max_linear_energy_change: float


def linear_piece_mask(z1: np.ndarray, z2: np.ndarray) -> np.ndarray:
    """Steps ``t -> t+1`` where each coordinate stays in the same linear piece."""

    def piece(z):
        return np.where(z <= 0, 0, np.where(z >= 1, 2, 1))

    p1, p2 = piece(z1), piece(z2)
    same = (p1[1:] == p1[:-1]) & (p2[1:] == p2[:-1])
    return same & (p1[1:] != 1) & (p2[1:] != 1)


def summarize_run(traj: Trajectory, window_start: int = 1000, burn_in: int = 10) -> RunSummary:
    r = regret(traj, 1).regret
    t = np.arange(window_start, len(r))
    ratio = r[t] / np.sqrt(t)
    B = boundary_entry_index(traj)
    mixed_after = -1 if B is None else int(both_mixed(traj)[B:].sum())

    z1, z2 = z_series(traj)
    energy = energy_series(traj)
    d_energy = np.diff(energy)
    lin = linear_piece_mask(z1, z2)

    report = analyze(traj, B)
    geo = summarize(report, burn_in=burn_in)
    return RunSummary(
        final_regret=float(r[-1]),
        max_ratio=float(ratio.max()),
        median_ratio=float(np.median(ratio)),
        boundary=B,
        mixed_after_boundary=mixed_after,
        partitions=geo.partitions,
        kappa=geo.kappa,
        kappa_first_decade=geo.kappa_first_decade,
        kappa_last_decade=geo.kappa_last_decade,
        energy_fit=geo.energy_fit,
        time_fit=geo.time_fit,
        skips=geo.skips,
        min_energy_step=float(d_energy.min()),
        max_linear_energy_change=float(np.abs(d_energy[lin]).max()) if lin.any() else 0.0,
    )


# --------------------------------------------------------------------------- sweep

SUMMARY_COLUMNS = (
    "game", "eta", "seed", "final_regret", "max_regret_per_sqrt_t", "median_regret_per_sqrt_t",
    "boundary", "kappa", "energy_slope", "energy_r2", "time_r2", "partitions", "error",
)


def random_start(game: NormalizedGame, eta: float, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """On-line initial vectors with ``(y11, y21)`` uniform in ``[-2, 2]^2``."""
    y11, y21 = np.random.default_rng(seed).uniform(-2.0, 2.0, size=2)
    return on_line(game, eta, float(y11), float(y21))


def sweep_row(task: tuple[Any, str, float, int, int, int]) -> dict:
    spec, label, eta, seed, T, window = task
    row: dict[str, Any] = {"game": label, "eta": eta, "seed": seed, "error": ""}
    try:
        game = normalize(game_from_spec(spec))
        y1, y2 = random_start(game, eta, seed)
        s = summarize_run(simulate(game, y1, y2, eta, T), window_start=min(window, T))
    except Exception as exc:  # noqa: BLE001 - a failed run is reported, the sweep continues
        row["error"] = f"{type(exc).__name__}: {exc}"
        return row
    row.update(
        final_regret=s.final_regret,
        max_regret_per_sqrt_t=s.max_ratio,
        median_regret_per_sqrt_t=s.median_ratio,
        boundary=s.boundary,
        kappa=s.kappa,
        energy_slope=s.energy_fit.slope,
        energy_r2=s.energy_fit.r2,
        time_r2=s.time_fit.r2,
        partitions=s.partitions,
    )
    return row


def worker_count(tasks: int) -> int:
    env = os.environ.get("ZSLAB_THREADS")
    cap = int(env) if env and env.isdigit() and int(env) > 0 else (os.cpu_count() or 1)
    return max(1, min(cap, tasks))


def parse_sweep_config(data: dict, base: Path | None = None) -> tuple[list[tuple], Path]:
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    games = data.get("games", [data.get("game", "matching-pennies")])
    if not isinstance(games, list):
        raise ConfigError("field 'games': expected a list")
    etas = data.get("etas", [])
    if not isinstance(etas, list):
        raise ConfigError("field 'etas': expected a list")
    seeds = data.get("seeds", [])
    if isinstance(seeds, int) and not isinstance(seeds, bool):
        seeds = list(range(seeds))
    if not isinstance(seeds, list):
        raise ConfigError("field 'seeds': expected a list or a count")
    T = _positive(data, "iterations", int)
    window = int(data.get("window", 1000))
    out = Path(data.get("outputs", "out"))
    if base is not None and not out.is_absolute():
        out = base / out
    tasks = []
    for spec in games:
        label = spec if isinstance(spec, str) else ",".join(str(spec.get(k)) for k in "abcd") if isinstance(spec, dict) else str(spec)
        for eta in etas:
            if isinstance(eta, bool) or not isinstance(eta, (int, float)) or not eta > 0:
                raise ConfigError(f"field 'etas': invalid step size {eta!r}")
            for seed in seeds:
                tasks.append((spec, label, float(eta), int(seed), T, window))
    return tasks, out


def run_sweep(tasks: list[tuple], out_dir: Path) -> tuple[list[dict], Path]:
    workers = worker_count(len(tasks))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(sweep_row, tasks))
    else:
        rows = [sweep_row(t) for t in tasks]
    rows.sort(key=lambda r: (r["game"], r["eta"], r["seed"]))
    nan = float("nan")
    path = outputs.write_rows(
        Path(out_dir) / "summary.csv",
        SUMMARY_COLUMNS,
        ([r.get(c, nan) if r.get(c) is not None else nan for c in SUMMARY_COLUMNS] for r in rows),
    )
    return rows, path


# --------------------------------------------------------------------------- verification suites


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, msg: str) -> None:
        self.failures.append(msg)

    def report(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{status} {self.name}: {self.checked} checks, {len(self.failures)} failures"]
        if self.failures:
            lines.append(f"  first failure: {self.failures[0]}")
        return "\n".join(lines)


def suite_pennies(t_max: int = 20100) -> SuiteResult:
    res = SuiteResult("pennies")
    check = verify_pennies(t_max)
    res.checked = check.checked
    if not check.passed:
        res.fail(check.detail)
    return res


def suite_projection(samples: int = 10_000, seed: int = 0, tol: float = 1e-8) -> SuiteResult:
    res = SuiteResult("projection")
    rng = np.random.default_rng(seed)
    for i in range(samples):
        n = int(rng.integers(2, 5))
        eta = float(np.exp(rng.uniform(np.log(0.01), np.log(10.0))))
        y = rng.normal(0.0, 3.0, size=n)
        x = gd_strategy(y, eta)
        err = float(np.abs(x - simplex_qp_bisection(y, eta)).max())
        if err > tol:
            res.fail(f"sample {i}: y={y.tolist()} eta={eta}: |x - qp|={err:.3e}")
        s, o = support_set(y, eta), exhaustive_support(y, eta)
        if s != o:
            res.fail(f"sample {i}: y={y.tolist()} eta={eta}: support {s} != exhaustive {o}")
        res.checked += 1
    return res


def random_normalized_games(count: int, seed: int = 0) -> list[NormalizedGame]:
    rng = np.random.default_rng(seed)
    games: list[NormalizedGame] = []
    while len(games) < count:
        a, b, c, d = (float(v) for v in rng.uniform(-5, 5, size=4))
        try:
            games.append(normalize(PayoffMatrix2x2(a, b, c, d)))
        except GameError:
            continue
    return games


def suite_energy(points: int = 100_000, T: int = 100_000, seed: int = 0) -> SuiteResult:
    """Piecewise/direct agreement, continuity, coefficient signs and monotonicity."""
    res = SuiteResult("energy")
    rng = np.random.default_rng(seed)
    games = random_normalized_games(100, seed)
    for g in games:
        eta = float(np.exp(rng.uniform(np.log(0.05), np.log(2.0))))
        co = energy_coefficients(g, eta)
        for i in range(2):
            if not (co.gamma[i] > 0 and co.alpha0[i] < 0 and co.alpha1[i] > 0):
                res.fail(f"coefficient signs player {i + 1}: {co}")
            for edge in (0.0, 1.0):
                below = co.alpha0[i] * edge - co.beta0[i] if edge == 0 else co.gamma[i] + co.alpha[i] - co.beta[i]
                above = -co.beta[i] if edge == 0 else co.alpha1[i] - co.beta1[i]
                if abs(below - above) > 1e-12 * max(1.0, abs(below)):
                    res.fail(f"discontinuity at z={edge}: {below} vs {above}")
        res.checked += 1

    per_game = max(1, points // len(games))
    for g in games:
        eta = float(np.exp(rng.uniform(np.log(0.05), np.log(2.0))))
        co = energy_coefficients(g, eta)
        tr = DualTransform.of(g, eta)
        for _ in range(per_game):
            player = int(rng.integers(1, 3))
            z = float(rng.uniform(-1.5, 2.5))
            s, scale = tr.slopes[player - 1], tr.scales[player - 1]
            u = (z - 0.5) / scale
            direct = conjugate_energy(np.array([u, s * u]), eta)
            piece = piecewise_energy(co, z, player)
            if abs(direct - piece) > 1e-9:
                res.fail(f"z={z} player {player}: piecewise {piece} vs direct {direct}")
            res.checked += 1

    for g in [normalize(MATCHING_PENNIES), *games[:2]]:
        for eta in (0.05, 0.15, 0.5, 1.0):
            y1, y2 = random_start(g, eta, seed)
            traj = simulate(g, y1, y2, eta, T)
            e = energy_series(traj)
            d = np.diff(e)
            if d.min() < -1e-9:
                res.fail(f"energy decreased by {-d.min():.3e} (eta={eta})")
            z1, z2 = z_series(traj)
            lin = linear_piece_mask(z1, z2)
            if lin.any() and np.abs(d[lin]).max() > 1e-9:
                res.fail(f"energy changed by {np.abs(d[lin]).max():.3e} on a linear segment (eta={eta})")
            res.checked += len(d)
    return res


def suite_partitions(T: int = 1_000_000, etas=(0.15, 0.5), seed: int = 0) -> SuiteResult:
    res = SuiteResult("partitions")
    g = normalize(MATCHING_PENNIES)
    for eta in etas:
        y1, y2 = random_start(g, eta, seed)
        s = summarize_run(simulate(g, y1, y2, eta, T))
        res.checked += 1
        if s.partitions < 1000:
            res.fail(f"eta={eta}: only {s.partitions} partitions")
        if s.kappa_last_decade > s.kappa_first_decade + 1:
            res.fail(f"eta={eta}: strategy changes grow ({s.kappa_first_decade} -> {s.kappa_last_decade})")
        if s.energy_fit.r2 < 0.99 or s.time_fit.r2 < 0.99:
            res.fail(f"eta={eta}: fits r2 energy={s.energy_fit.r2:.4f} time={s.time_fit.r2:.4f}")
        if eta <= 0.5 and s.skips:
            res.fail(f"eta={eta}: {s.skips} region skips")
    return res


SUITES = {
    "pennies": suite_pennies,
    "projection": suite_projection,
    "energy": suite_energy,
    "partitions": suite_partitions,
}
