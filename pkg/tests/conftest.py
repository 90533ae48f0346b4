import random

import pytest

from tnrss.core import keygen


@pytest.fixture
def rng():
    return random.Random(1337)


@pytest.fixture(scope="session")
def small_keys():
    """A (t=2, n=3) key set shared by tests that don't mutate key material."""
    return keygen(2, 3, random.Random(99))


@pytest.fixture(scope="session")
def solo_keys():
    """Degenerate (t=1, n=1) key set."""
    return keygen(1, 1, random.Random(7))
