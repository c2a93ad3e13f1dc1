from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zslab.dual import on_line, z_series
from zslab.ftrl import simulate
from zslab.metrics import boundary_entry_index
from zslab.partitions import (
    NoZ0EntryError,
    Region,
    analyze,
    break_points,
    classify,
    classify_array,
    linear_fit,
    summarize,
)

coord = st.one_of(st.sampled_from([0.0, 1.0, -0.0]), st.floats(-3, 4, allow_nan=False))


class TestClassify:
    @pytest.mark.parametrize(
        "z, region",
        [
            ((0.5, 1.5), Region.Z0),
            ((1.5, 0.5), Region.Z1),
            ((-0.5, -0.5), Region.Z3),
            ((0.5, -0.5), Region.Z2),
            ((0.5, 0.5), Region.INTERIOR),
            ((1.0, 1.0), Region.Z1),
            ((0.0, 0.0), Region.Z3),
            ((0.0, 1.0), Region.Z0),
            ((1.0, 0.0), Region.Z2),
        ],
    )
    def test_examples(self, z, region):
        assert classify(z) is region

    @given(coord, coord)
    def test_exactly_one_region(self, z1, z2):
        memberships = [
            z1 < 1 and z2 >= 1,
            z1 >= 1 and z2 > 0,
            z1 > 0 and z2 <= 0,
            z1 <= 0 and z2 < 1,
            0 < z1 < 1 and 0 < z2 < 1,
        ]
        assert sum(memberships) == 1
        assert memberships.index(True) == classify((z1, z2))

    @given(st.lists(st.tuples(coord, coord), min_size=1, max_size=50))
    def test_array_matches_scalar(self, pts):
        z1, z2 = np.array(pts).T
        assert list(classify_array(z1, z2)) == [classify(p) for p in pts]

    @given(coord, coord)
    def test_interior_iff_both_mixed(self, z1, z2):
        x1, x2 = np.clip(z1, 0, 1), np.clip(z2, 0, 1)
        mixed = 0 < x1 < 1 and 0 < x2 < 1
        assert (classify((z1, z2)) is Region.INTERIOR) == mixed


class TestBreakPoints:
    def test_single_region(self):
        rep = break_points(np.array([4, 4, 0, 1, 1, 1], dtype=np.int8), 0)
        assert list(rep.breaks) == [2, 3, 6]
        rep = break_points(np.array([4, 0, 0, 0], dtype=np.int8), 1)
        assert list(rep.breaks) == [1, 4]
        assert rep.count == 1 and rep.complete == 0

    def test_no_entry(self):
        with pytest.raises(NoZ0EntryError):
            break_points(np.array([1, 2, 3], dtype=np.int8), 0)
        with pytest.raises(NoZ0EntryError):
            break_points(np.array([0, 1, 2], dtype=np.int8), None)

    def test_t0_after_boundary(self):
        rep = break_points(np.array([0, 4, 1, 2, 3, 0, 1], dtype=np.int8), 2)
        assert rep.breaks[0] == 5


class TestPenniesBlocks:
    def test_triangular_structure(self, pennies_run):
        rep = analyze(pennies_run, boundary_entry_index(pennies_run))
        n = np.arange(3, 3 + rep.count)
        np.testing.assert_array_equal(rep.breaks[:-1], n * (n + 1) // 2)
        np.testing.assert_array_equal(rep.length[:-1], n[:-1] + 1)
        assert np.all(rep.advance[1:] == 1)
        # one pure strategy switch per partition
        assert np.all(rep.strategy_changes[:-1] == 1)


class TestReferenceRun:
    def test_clockwise_window(self, mp):
        y1, y2 = on_line(mp, 0.15, 0.2, -0.3)
        tr = simulate(mp, y1, y2, 0.15, 140)
        regions = classify_array(*z_series(tr))[95:141]
        changes = regions[np.flatnonzero(np.diff(regions)) + 1]
        steps = np.diff(np.concatenate([[regions[0]], changes]).astype(int)) % 4
        assert set(regions) <= {0, 1, 2, 3}
        assert len(changes) >= 3 and np.all(steps == 1)

    @pytest.mark.parametrize("eta", [0.05, 0.15, 0.5, 1.0])
    def test_geometry(self, mp, eta):
        y1, y2 = on_line(mp, eta, 0.2, -0.3)
        tr = simulate(mp, y1, y2, eta, 1_000_000)
        rep = analyze(tr, boundary_entry_index(tr))
        s = summarize(rep)
        assert s.partitions >= 1000
        assert s.kappa_last_decade <= s.kappa_first_decade + 1
        assert s.energy_fit.r2 >= 0.99 and s.time_fit.r2 >= 0.99
        assert 0 < s.delta_min <= s.delta_max < np.inf
        assert 0 < s.length_ratio_min <= s.length_ratio_max < np.inf
        if eta <= 0.5:
            assert s.skips == 0

    def test_rows(self, reference_run):
        rep = analyze(reference_run, boundary_entry_index(reference_run))
        rows = list(rep.rows())
        assert len(rows) == rep.count
        assert rows[0]["region"] == "Z0"
        assert np.isnan(rows[-1]["delta_r"])
        assert sum(r["length"] for r in rows) == reference_run.T + 1 - rep.breaks[0]

    def test_summarize_needs_partitions(self, reference_run):
        rep = analyze(reference_run, boundary_entry_index(reference_run))
        with pytest.raises(ValueError):
            summarize(rep, burn_in=rep.complete)


class TestLinearFit:
    def test_exact_line(self):
        f = linear_fit([0, 1, 2, 3], [1, 3, 5, 7])
        assert f.slope == pytest.approx(2) and f.intercept == pytest.approx(1) and f.r2 == pytest.approx(1)

    def test_constant(self):
        assert linear_fit([0, 1, 2], [4, 4, 4]).r2 == 1.0
