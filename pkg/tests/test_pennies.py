from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from zslab.metrics import regret
from zslab.pennies import (
    TriangularIndex,
    _exact_tables,
    exact_cumulative_utility,
    exact_payoff_vectors,
    exact_regret,
    triangular_index,
    verify_pennies,
)


class TestTriangularIndex:
    @pytest.mark.parametrize("t, n, k", [(0, 0, 0), (10, 4, 0), (9, 3, 3), (20100, 200, 0), (20099, 199, 199)])
    def test_examples(self, t, n, k):
        assert triangular_index(t) == TriangularIndex(n, k)

    @given(st.integers(0, 10**12))
    def test_round_trip(self, t):
        ti = triangular_index(t)
        assert 0 <= ti.k <= ti.n
        assert ti.t == t

    def test_negative(self):
        with pytest.raises(ValueError):
            triangular_index(-1)


class TestFormulas:
    @pytest.mark.parametrize(
        "t, y1, y2", [(0, (1, 0), (1, 0)), (3, (0, 1), (-2, 3)), (10, (1, 0), (5, -4)), (4, (-1, 2), (-1, 2))]
    )
    def test_payoff_vectors(self, t, y1, y2):
        assert exact_payoff_vectors(t) == (y1, y2)

    @pytest.mark.parametrize("t, value", [(0, 1), (4, 1), (6, 1)])
    def test_cumulative_utility(self, t, value):
        assert exact_cumulative_utility(t) == value

    @pytest.mark.parametrize("t, value", [(10, 2), (4, 2), (2, 2), (0, 0)])
    def test_regret(self, t, value):
        assert exact_regret(t) == value
        assert isinstance(exact_regret(t), Fraction)

    @given(st.integers(10, 10**9))
    def test_regret_growth(self, t):
        assert 0.2 <= exact_regret(t) / math.sqrt(t) <= 1.2

    def test_regret_ratio_limit(self):
        t = 10**12
        assert float(exact_regret(t)) / math.sqrt(t) == pytest.approx(1 / math.sqrt(2), rel=1e-5)

    def test_tables_match_scalar_formulas(self):
        tab = _exact_tables(2000)
        for t in range(2001):
            y1, y2 = exact_payoff_vectors(t)
            assert tuple(tab["y1"][t]) == y1 and tuple(tab["y2"][t]) == y2
            assert tab["utility"][t] == exact_cumulative_utility(t)
            assert tab["regret"][t] == exact_regret(t)


class TestAgainstSimulator:
    def test_payoffs_utility_regret(self, pennies_run):
        ts = range(len(pennies_run))
        y1 = np.array([exact_payoff_vectors(t)[0] for t in ts], dtype=float)
        y2 = np.array([exact_payoff_vectors(t)[1] for t in ts], dtype=float)
        np.testing.assert_array_equal(pennies_run.y1, y1)
        np.testing.assert_array_equal(pennies_run.y2, y2)
        util = np.cumsum(pennies_run.utility)
        np.testing.assert_array_equal(util, [exact_cumulative_utility(t) for t in ts])
        np.testing.assert_array_equal(regret(pennies_run).regret, [float(exact_regret(t)) for t in ts])

    def test_verify(self):
        res = verify_pennies(20100)
        assert res.passed, res.detail
        assert res.checked == 20101

    def test_verify_small(self):
        assert verify_pennies(0).passed
