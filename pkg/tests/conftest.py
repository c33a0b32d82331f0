import random

import pytest
from hypothesis import settings

from dyncover.core import DIRECTIONS, Interval, ProblemInstance, Quadrant, UnitSquare

settings.register_profile("default", max_examples=150, deadline=None)
settings.load_profile("default")


def random_interval_instance(rnd, kind="cover", npts=8, nrng=10, span=20, width=6):
    inst = ProblemInstance(kind)
    for i in range(rnd.randint(0, npts)):
        inst.insert_point(i, rnd.randint(0, span))
    for i in range(100, 100 + rnd.randint(0, nrng)):
        a = rnd.randint(0, span)
        inst.insert_range(i, Interval(a, a + rnd.randint(0, width)))
    return inst


def random_quadrant_instance(rnd, kind="cover", npts=20, nq=12, span=30):
    inst = ProblemInstance(kind)
    for i in range(rnd.randint(0, npts)):
        inst.insert_point(i, (rnd.randint(0, span), rnd.randint(0, span)))
    for i in range(100, 100 + rnd.randint(0, nq)):
        inst.insert_range(i, Quadrant(rnd.choice(DIRECTIONS), rnd.randint(0, span),
                                      rnd.randint(0, span)))
    return inst


def eighth(rnd, hi=5):
    return rnd.randrange(hi * 8) / 8


def random_square(rnd, hi=5):
    return UnitSquare(eighth(rnd, hi), eighth(rnd, hi))


@pytest.fixture
def rnd():
    return random.Random(12345)
