import random

import pytest

from intersel.core import Instance, Interval, WeightModel
from intersel.workloads import KDistinct, Uniform, gen_random


def make_instance(coords, weight_model=WeightModel.UNIT):
    """Build an instance from a list of (start, finish) pairs."""
    return Instance(
        [Interval(i, s, f) for i, (s, f) in enumerate(coords)], weight_model
    )


def random_instance(seed, max_n=14, weight_model=WeightModel.UNIT, grid=0.25):
    """Small seeded instance on a dyadic grid so weight sums are exact."""
    rng = random.Random(seed)
    n = rng.randint(1, max_n)
    dist = KDistinct((1.0, 2.0, 4.0)) if seed % 2 else Uniform(0.5, 6.0)
    return gen_random(n, dist, span=20.0, seed=seed, weight_model=weight_model, grid=grid)


@pytest.fixture
def theorem2_coords():
    # one copy: big interval covering two disjoint small ones
    return [(0.0, 16.0), (2.0, 7.0), (8.0, 13.0)]
