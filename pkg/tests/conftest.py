import math

import pytest

from helpers import theta_pair


@pytest.fixture
def pi3_pair():
    return theta_pair(math.pi / 3)
