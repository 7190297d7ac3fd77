import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from helpers import FIG_A, FIG_B

settings.register_profile(
    "default",
    deadline=None,
    max_examples=int(os.environ.get("LCIS_HYPOTHESIS_EXAMPLES", "60")),
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture
def fig():
    return np.array(FIG_A, np.int64), np.array(FIG_B, np.int64)

