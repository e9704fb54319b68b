
# python -m pytest tests/test_samplers.py

import pytest

from padiz.errors import OutOfRegime
from padiz.padic_core import Ball, Sphere, difference_ord, one
from padiz.padiz_test_config import instance
from padiz.potts_bethe import A3, A_INF_1, SINGULAR
from padiz.samplers import (default_rng, random_in_ball, random_on_sphere, random_padic, random_unit,
                            sample_points, sample_region)


def test_random_unit():
    rng = default_rng(0)
    for _ in range(100):
        u = random_unit(rng, 7, 10)
        assert u.valuation == 0 and u.precision == 10


def test_random_padic_orders():
    rng = default_rng(1)
    orders = {random_padic(rng, 5, 10, min_ord=-1, max_ord=2).valuation for _ in range(200)}
    assert orders == {-1, 0, 1, 2}


def test_random_on_sphere_and_ball():
    rng = default_rng(2)
    center = one(7, 20)
    for _ in range(100):
        assert Sphere(center, -3).contains(random_on_sphere(rng, center, -3, 20))
        assert Ball(center, -2).contains(random_in_ball(rng, Ball(center, -2), 20))


def test_sample_region_full_shift():
    m = instance('full_shift')
    rng = default_rng(3)
    for tag in m.region_tags():
        if tag in (SINGULAR, A3):
            continue
        x = sample_region(rng, m, tag)
        assert m.classify_region(x).tag == tag


def test_sample_region_small_primes():
    rng = default_rng(4)
    for name in ('three_root', 'two_root'):
        m = instance(name)
        for tag in m.region_tags():
            if tag == SINGULAR:
                continue
            try:
                x = sample_region(rng, m, tag)
            except OutOfRegime:
                continue
            assert m.classify_region(x).tag == tag


def test_empty_and_unknown_regions():
    m = instance('full_shift')
    rng = default_rng(5)
    with pytest.raises(OutOfRegime):
        sample_region(rng, m, A3)
    with pytest.raises(OutOfRegime):
        sample_region(rng, m, A_INF_1)


def test_sample_points_is_reproducible():
    m = instance('full_shift')
    first = sample_points(default_rng(6), m, 12)
    second = sample_points(default_rng(6), m, 12)
    assert len(first) == 12
    assert all(difference_ord(x, y)[1] is False for x, y in zip(first, second))
