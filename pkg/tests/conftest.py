from __future__ import annotations

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from zslab.dual import on_line
from zslab.ftrl import simulate
from zslab.game import MATCHING_PENNIES, normalize

settings.register_profile(
    "zslab", deadline=None, max_examples=200, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("zslab")


@pytest.fixture(scope="session")
def mp():
    return normalize(MATCHING_PENNIES)


@pytest.fixture(scope="session")
def pennies_run(mp):
    """Matching Pennies, eta=1, y0=(1,0),(1,0), raw (unprojected) start."""
    return simulate(mp, (1.0, 0.0), (1.0, 0.0), 1.0, 20_100, project=False)


@pytest.fixture(scope="session")
def reference_run(mp):
    """Matching Pennies, eta=0.15, (y11, y21) = (0.2, -0.3) on the dual lines."""
    y1, y2 = on_line(mp, 0.15, 0.2, -0.3)
    return simulate(mp, y1, y2, 0.15, 5000)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
