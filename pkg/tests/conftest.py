import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from talbotlau import BeamModel, InertialEnvironment, InterferometerGeometry
from talbotlau.constants import ATOMIC_MASS


@pytest.fixture
def c70_geometry():
    return InterferometerGeometry(period=990e-9, separation=0.38, tilt=1e-3)


@pytest.fixture
def c70_fast_beam():
    return BeamModel(mass=840 * ATOMIC_MASS, speed=200.0, speed_sigma=20.0)


@pytest.fixture
def c70_slow_beam():
    return BeamModel(mass=840 * ATOMIC_MASS, speed=100.0, speed_sigma=10.0)


@pytest.fixture
def earth_environment():
    return InertialEnvironment(rotation_rate=5.55e-5, gravity=9.81)


@pytest.fixture
def insulin_geometry():
    return InterferometerGeometry(period=257e-9, separation=0.4, tilt=1e-3)


@pytest.fixture
def insulin_beam():
    return BeamModel(mass=5730 * ATOMIC_MASS, speed=300.0, speed_sigma=30.0)
