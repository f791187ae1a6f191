import numpy as np
import pytest
from hypothesis import settings

from bezout.inequalities import random_polytope

# qhull calls make individual examples slow; keep property runs short
settings.register_profile("bezout", max_examples=25, deadline=None)
settings.load_profile("bezout")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def polys(n, k, seed):
    rng = np.random.default_rng(seed)
    return [random_polytope(n, rng) for _ in range(k)]
