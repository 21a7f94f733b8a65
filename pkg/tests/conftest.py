import sys
from datetime import datetime, timezone
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from carelink.world import build_world, demo_secret

FIXED_NOW = datetime(2026, 3, 2, 9, 0, 0, tzinfo=timezone.utc)


def fixed_clock():
    return FIXED_NOW


@pytest.fixture
def world():
    return build_world(seed=0, clock=fixed_clock)


@pytest.fixture
def clinic_token(world):
    return world.login("dr-alice", demo_secret("dr-alice"), "clinic")


@pytest.fixture
def pharmacist_token(world):
    return world.login("bob-pharmacist", demo_secret("bob-pharmacist"), "PH-CENTRAL")


@pytest.fixture
def patient_token(world):
    return world.login("pat-patient", demo_secret("pat-patient"), "PH-CENTRAL")
