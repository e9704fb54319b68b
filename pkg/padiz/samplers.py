# Random p-adic points for classification sweeps and partition checks
# Every sampler takes a numpy Generator so runs are reproducible from a seed

from typing import List

import numpy as np

from padiz.conventions import default_precision
from padiz.errors import OutOfRegime, PrecisionExhausted
from padiz.padic_core import Ball, PadicNumber, from_residue, translate
from padiz.padic_poly import REGIME_ONE_MOD_THREE, REGIME_THREE
from padiz.potts_bethe import (A0, A0_INF, A1, A1_INF, A1_INF_1, A1_INF_2, A2, A3, A23_INF, A_INF, A_INF_1,
                               A_INF_2, A_INF_3, C1, C2, C3, PottsBetheMap)

SAMPLER_ATTEMPTS = 200


def default_rng(seed: int = 0) -> np.random.Generator:
    return np.random.default_rng(seed)


# --------------------------------------------------------------------------
#            Points
# --------------------------------------------------------------------------

def random_unit(rng: np.random.Generator, prime: int, precision: int) -> PadicNumber:
    """ A unit of Z_p with uniformly random digits """
    digits = rng.integers(0, prime, size=precision).tolist()
    digits[0] = int(rng.integers(1, prime))
    return from_residue(sum(d * prime ** i for i, d in enumerate(digits)), prime, precision)


def random_padic(rng: np.random.Generator, prime: int, precision: int = None, min_ord: int = 0,
                 max_ord: int = 3) -> PadicNumber:
    """ p^v u with v uniform in [min_ord, max_ord] and u a random unit """
    precision = int(precision or default_precision())
    v = int(rng.integers(min_ord, max_ord + 1))
    return random_unit(rng, prime, precision).shift(v)


def random_on_sphere(rng: np.random.Generator, center: PadicNumber, radius_exp: int,
                     precision: int = None) -> PadicNumber:
    """ Uniform on { x : |x - center| = p^radius_exp } """
    precision = int(precision or default_precision())
    offset = random_unit(rng, center.prime, precision).shift(-radius_exp)
    return center + offset


def random_in_ball(rng: np.random.Generator, ball: Ball, precision: int = None) -> PadicNumber:
    precision = int(precision or default_precision())
    p = ball.prime
    digits = rng.integers(0, p, size=precision).tolist()
    residue = sum(d * p ** i for i, d in enumerate(digits))
    if residue == 0:
        return ball.center
    return translate(ball.center, from_residue(residue, p, precision).shift(ball.min_ord))


# --------------------------------------------------------------------------
#            Regions of the Potts-Bethe map
# --------------------------------------------------------------------------

def _singular_offsets(m: PottsBetheMap, tag: str) -> List[int]:
    """ Candidate ord(x - x_inf) for tags that live near the singular point """
    vq, vt, vr = m.vq, m.vt, m.vr
    if m.prime_regime == REGIME_ONE_MOD_THREE:
        table = {A2: range(vq + 1, vt), A1_INF: [vt], A3: range(vt + 1, vr), A23_INF: [vr],
                 A_INF: range(vr + 1, vr + 4)}
    elif m.prime_regime == REGIME_THREE:
        table = {A2: range(vq + 1, vt + 1), A1_INF_1: [vt + 1], A_INF: range(vt + 2, vt + 5)}
    else:
        table = {A2: range(vq + 1, vt), A1_INF_1: [vt], A_INF_1: range(vt + 1, vr), A_INF_2: [vr],
                 A_INF_3: range(vr + 1, vr + 4)}
    return list(table.get(tag, []))


def _scaling_center(m: PottsBetheMap, tag: str):
    for label, ball, _ in m.scaling_balls():
        if label == tag:
            return ball
    return None


def _candidate(rng: np.random.Generator, m: PottsBetheMap, tag: str) -> PadicNumber:
    N = m.precision
    if tag == A0:
        return random_on_sphere(rng, m.one, -(m.vq + 1 + int(rng.integers(0, 3))), N)
    if tag == A1:
        return random_on_sphere(rng, m.one, -int(rng.integers(-2, m.vq)), N)
    if tag == A0_INF:
        return random_on_sphere(rng, m.one, -m.vq, N)
    if tag in (C1, C2, C3) or (tag == A1_INF_2):
        ball = _scaling_center(m, tag)
        if ball is None:
            raise OutOfRegime(tag + ' is empty for these parameters')
        return random_in_ball(rng, ball, N)
    offsets = _singular_offsets(m, tag)
    if not offsets:
        raise OutOfRegime(tag + ' is empty or unknown for these parameters')
    d = offsets[int(rng.integers(0, len(offsets)))]
    return random_on_sphere(rng, m.singular_point, -d, N)


def sample_region(rng: np.random.Generator, m: PottsBetheMap, tag: str) -> PadicNumber:
    """ A random point whose classify_region tag is the requested one (construct, then verify) """
    if tag not in m.region_tags():
        raise OutOfRegime(tag + ' is not a region for p = ' + str(m.prime))
    for _ in range(SAMPLER_ATTEMPTS):
        x = _candidate(rng, m, tag)
        try:
            if m.classify_region(x).tag == tag:
                return x
        except PrecisionExhausted:
            continue
    raise OutOfRegime('No point of %s found after %d attempts' % (tag, SAMPLER_ATTEMPTS))


def sample_points(rng: np.random.Generator, m: PottsBetheMap, num: int) -> List[PadicNumber]:
    """ Points spread over every non-singular region the map has """
    tags = [t for t in m.region_tags() if t not in ('SINGULAR',)]
    points = []
    for i in range(num):
        try:
            points.append(sample_region(rng, m, tags[i % len(tags)]))
        except OutOfRegime:
            points.append(random_padic(rng, m.prime, m.precision, min_ord=-1, max_ord=m.vr + 2))
    return points
