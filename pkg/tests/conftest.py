import math

import numpy as np
import pytest

from dfrc import ArrayGeometry, Scenario


@pytest.fixture()
def reference_scenario() -> Scenario:
    # 10-element half-wavelength ULA, target at -30 deg, LoS user at broadside
    return Scenario.with_los_user(
        ArrayGeometry(10, 0.5), math.radians(-30.0), 0.0, 1.0, 1.0
    )


@pytest.fixture()
def parallel_scenario() -> Scenario:
    # user and target share the direction: channel parallel to the steering vector
    return Scenario.with_los_user(
        ArrayGeometry(10, 0.5), math.radians(-30.0), math.radians(-30.0), 1.0, 1.0
    )


@pytest.fixture()
def orthogonal_scenario() -> Scenario:
    # sin(30) - sin(-30) = 1 makes the two directions exactly orthogonal at M=10
    return Scenario.with_los_user(
        ArrayGeometry(10, 0.5), math.radians(-30.0), math.radians(30.0), 1.0, 1.0
    )


@pytest.fixture()
def make_random_scenario():
    """Factory for random scenarios: geometry, angles, power all drawn."""

    def make(rng: np.random.Generator, m_lo: int = 2, m_hi: int = 16) -> Scenario:
        m = int(rng.integers(m_lo, m_hi + 1))
        target = float(rng.uniform(-math.pi / 2, math.pi / 2))
        user = float(rng.uniform(-math.pi / 2, math.pi / 2))
        power = float(rng.uniform(0.1, 10.0))
        return Scenario.with_los_user(ArrayGeometry(m, 0.5), target, user, power)

    return make
