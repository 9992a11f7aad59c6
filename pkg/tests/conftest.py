import random

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def rel(x, ref) -> float:
    return abs(x - ref) / max(1.0, abs(ref))


@pytest.fixture
def random_ts():
    rng = random.Random(7)
    return [rng.uniform(0.1, 0.9) for _ in range(20)]
