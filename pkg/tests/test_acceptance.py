"""Acceptance criteria, one test each. Every test prints a single PASS/FAIL line."""

from __future__ import annotations

import time

import numpy as np
import pytest

from zslab.continuous import energy_drift, integrate, rotation_period
from zslab.dual import (
    DualTransform,
    conjugate_energy,
    energy_coefficients,
    on_line,
    piecewise_energy,
    z_series,
)
from zslab.experiments import (
    RunConfig,
    random_normalized_games,
    random_start,
    regret_squared_fit,
    run_simulation,
    suite_projection,
    summarize_run,
)
from zslab.ftrl import simulate
from zslab.game import MATCHING_PENNIES, PayoffMatrix2x2, normalize
from zslab.metrics import nash_gap
from zslab.pennies import verify_pennies

ETAS = (0.05, 0.15, 0.5, 1.0)
SEEDS = range(8)
T_LONG = 1_000_000
GAMES = {
    "matching-pennies": MATCHING_PENNIES,
    "2,-1,-2,4": PayoffMatrix2x2(2, -1, -2, 4),
    "1,-2,-3,4": PayoffMatrix2x2(1, -2, -3, 4),
}


@pytest.fixture
def report(capsys):
    def emit(number: int, passed: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n{'PASS' if passed else 'FAIL'} criterion {number}: {detail}", flush=True)

    return emit


@pytest.fixture(scope="module")
def grid():
    """Run summaries for every (game, eta, seed) of the long-horizon grid."""
    out = {}
    for name, m in GAMES.items():
        g = normalize(m)
        for eta in ETAS:
            for seed in SEEDS:
                y1, y2 = random_start(g, eta, seed)
                out[name, eta, seed] = summarize_run(simulate(g, y1, y2, eta, T_LONG), window_start=1000)
    return out


def test_criterion_01_exact_lower_bound(report):
    simulate(normalize(MATCHING_PENNIES), (1.0, 0.0), (1.0, 0.0), 1.0, 2, project=False)  # warm the kernel
    start = time.perf_counter()
    res = verify_pennies(20_100)
    elapsed = time.perf_counter() - start
    ok = res.passed and res.checked == 20_101 and elapsed < 1.0
    report(1, ok, f"{res.checked} iterations exact, first divergence {res.first_divergence}, {elapsed:.2f}s")
    assert res.passed, res.detail
    assert elapsed < 1.0


def test_criterion_02_projection(report):
    start = time.perf_counter()
    res = suite_projection(samples=10_000, seed=2024, tol=1e-8)
    elapsed = time.perf_counter() - start
    ok = res.passed and elapsed < 30
    first = res.failures[0] if res.failures else "none"
    report(2, ok, f"{res.checked} samples, {len(res.failures)} mismatches (first: {first}), {elapsed:.1f}s")
    assert res.passed
    assert elapsed < 30


def test_criterion_03_energy_structure(report):
    rng = np.random.default_rng(3)
    games = random_normalized_games(100, seed=3)
    worst_direct = 0.0
    worst_jump = 0.0
    bad_signs = 0
    per_game = 1000
    for g in games:
        eta = float(np.exp(rng.uniform(np.log(0.02), np.log(3.0))))
        co = energy_coefficients(g, eta)
        tr = DualTransform.of(g, eta)
        for p in (1, 2):
            i = p - 1
            bad_signs += not (co.gamma[i] > 0 and co.alpha0[i] < 0 and co.alpha1[i] > 0)
            for edge in (0.0, 1.0):
                at = piecewise_energy(co, edge, p)
                for side in (np.nextafter(edge, -np.inf), np.nextafter(edge, np.inf)):
                    worst_jump = max(worst_jump, abs(piecewise_energy(co, side, p) - at))
        for p, z in zip(rng.integers(1, 3, per_game), rng.uniform(-1.5, 2.5, per_game)):
            s, scale = tr.slopes[p - 1], tr.scales[p - 1]
            u = (z - 0.5) / scale
            direct = conjugate_energy(np.array([u, s * u]), eta)
            worst_direct = max(worst_direct, abs(piecewise_energy(co, z, int(p)) - direct))
    points = per_game * len(games)
    ok = worst_direct <= 1e-9 and worst_jump <= 1e-12 and bad_signs == 0
    report(
        3, ok,
        f"{points} on-line points max |piecewise-direct|={worst_direct:.2e}; "
        f"max breakpoint jump={worst_jump:.2e}; sign violations {bad_signs}/{2 * len(games)}",
    )
    assert points >= 100_000
    assert worst_direct <= 1e-9
    assert worst_jump <= 1e-12
    assert bad_signs == 0


def test_criterion_04_energy_monotone(report, grid):
    drop = min(s.min_energy_step for s in grid.values())
    flat = max(s.max_linear_energy_change for s in grid.values())
    ok = drop >= -1e-9 and flat <= 1e-9
    report(4, ok, f"{len(grid)} runs of T=1e6: largest per-step decrease {-drop:.2e}, "
                  f"largest change on linear segments {flat:.2e}")
    assert drop >= -1e-9
    assert flat <= 1e-9


def test_criterion_05_sqrt_regret(report, grid):
    ratios = {k: s.max_ratio / s.median_ratio for k, s in grid.items()}
    worst = max(ratios, key=ratios.get)
    finite = all(np.isfinite(s.max_ratio) for s in grid.values())
    ok = finite and ratios[worst] <= 3.0
    report(5, ok, f"{len(grid)} runs: worst max/median of Regret/sqrt(t) over [1e3,1e6] = "
                  f"{ratios[worst]:.3f} at {worst}")
    assert finite
    assert ratios[worst] <= 3.0


def test_criterion_06_partition_geometry(report, grid):
    fewest = min(s.partitions for s in grid.values())
    growth = [k for k, s in grid.items() if s.kappa_last_decade > s.kappa_first_decade + 1]
    r2 = min(min(s.energy_fit.r2, s.time_fit.r2) for s in grid.values())
    ok = fewest >= 1000 and not growth and r2 >= 0.99
    report(6, ok, f"min partitions {fewest}; kappa growth in {len(growth)} runs; "
                  f"min R^2 (r_j~j, t_j~j^2) {r2:.5f}")
    assert fewest >= 1000
    assert not growth
    assert r2 >= 0.99


def test_criterion_07_boundary(report, grid):
    missing = [k for k, s in grid.items() if s.boundary is None]
    mixed = sum(max(s.mixed_after_boundary, 0) for s in grid.values())
    worst_B = max((s.boundary for s in grid.values() if s.boundary is not None), default=None)
    ok = not missing and mixed == 0
    report(7, ok, f"B found in {len(grid) - len(missing)}/{len(grid)} runs (max B={worst_B}); "
                  f"{mixed} both-mixed iterations after B")
    assert not missing
    assert mixed == 0


def test_criterion_08_time_average(report):
    g = normalize(MATCHING_PENNIES)
    y1, y2 = on_line(g, 0.15, 0.2, -0.3)
    horizons = (10_000, 40_000, 160_000, 640_000)
    tr = simulate(g, y1, y2, 0.15, horizons[-1])
    gaps = [nash_gap(tr, T) for T in horizons]
    factors = [a / b for a, b in zip(gaps, gaps[1:])]
    ok = all(f >= 1.5 for f in factors)
    report(8, ok, "gaps " + ", ".join(f"{x:.3e}" for x in gaps)
                  + "; shrink factors " + ", ".join(f"{f:.2f}" for f in factors) + " (need >= 1.5)")
    assert all(f >= 1.5 for f in factors)


def test_criterion_09_first_order(report):
    g = normalize(MATCHING_PENNIES)
    eta = 0.15
    y0 = on_line(g, eta, 0.2, -0.3)
    tr = simulate(g, *y0, eta, 1000)
    unit = integrate(g, y0, eta, 1000, 1.0)
    err = max(np.abs(unit.y1 - tr.y1).max(), np.abs(unit.y2 - tr.y2).max())
    H = rotation_period(*z_series(tr))
    drifts = [energy_drift(integrate(g, y0, eta, H, dt)) for dt in (1.0, 0.5, 0.25, 0.125, 0.0625)]
    monotone = all(b <= a for a, b in zip(drifts, drifts[1:]))
    ok = err <= 1e-12 and monotone
    report(9, ok, f"dt=1 max deviation {err:.1e}; drift over one rotation (H={H}) "
                  + " -> ".join(f"{d:.4f}" for d in drifts))
    assert err <= 1e-12
    assert monotone


def test_criterion_10_regret_triptych(report, tmp_path):
    cfg = RunConfig(game=MATCHING_PENNIES, eta=0.15, iterations=5000, outputs=tmp_path)
    res = run_simulation(cfg)
    svgs = [tmp_path / n for n in ("strategies.svg", "regret.svg", "regret_squared.svg")]
    present = all(p.exists() and p.stat().st_size > 0 for p in svgs)
    fit = regret_squared_fit(res.trajectory)
    ok = present and fit.r2 >= 0.95
    report(10, ok, f"three SVGs written: {present}; running-max regret^2 vs t R^2 = {fit.r2:.4f}")
    assert present
    assert fit.r2 >= 0.95
