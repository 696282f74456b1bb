import numpy as np
import pytest
from faker import Faker

from defdist.linalg import Counters


@pytest.fixture(scope="session")
def fake():
    return Faker()


@pytest.fixture
def rng():
    """Seeded generator so random instances are the same on every run."""
    return np.random.default_rng(20240607)


@pytest.fixture
def random_complex(rng):
    """Factory for dense complex Gaussian matrices."""
    def make(n, m=None):
        m = n if m is None else m
        return rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))
    return make


@pytest.fixture
def counters():
    """Factorization and solve tallies, zeroed for the test."""
    tally = Counters()
    tally.reset()
    yield tally
    tally.reset()
