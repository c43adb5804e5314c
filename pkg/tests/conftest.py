import numpy as np
import pytest

from majoranon.fields import SpinorField, normalize


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_spinor(rng, n):
    z = rng.standard_normal((2, n)) + 1j * rng.standard_normal((2, n))
    return normalize(SpinorField.from_array(z))


@pytest.fixture
def make_spinor(rng):
    return lambda n: random_spinor(rng, n)
