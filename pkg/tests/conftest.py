import numpy as np
import pytest

from qqdyn.quaternion import Quaternion


@pytest.fixture
def rng():
    return np.random.default_rng(20071008)


def random_quaternion(rng):
    return Quaternion(*rng.standard_normal(4))
