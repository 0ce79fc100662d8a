import warnings

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# the sandbox TBB is older than numba wants; the fallback is harmless
warnings.filterwarnings("ignore", message=".*TBB.*")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
