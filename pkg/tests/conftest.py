import numpy as np
import pytest

from ercd.spectral import MomentumGrid


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def small_grid():
    return MomentumGrid((5, 5, 5), 0.5, 1.0)


@pytest.fixture(scope="session")
def grid9():
    return MomentumGrid((9, 9, 9), 0.5, 1.0)
