import random

import numpy as np
import pytest

from homalg import active_config


@pytest.fixture
def rng():
    """Deterministic stdlib generator, reseeded per test."""
    return random.Random(active_config().seed)


@pytest.fixture
def nprng():
    return np.random.default_rng(active_config().seed)
