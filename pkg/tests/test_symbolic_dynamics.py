
# python -m pytest tests/test_symbolic_dynamics.py

import itertools
from fractions import Fraction

import numpy as np
import pytest

from padiz.errors import BadBlockLength, EqualToHorizon, InadmissibleWord, OutOfRegime
from padiz.padic_core import difference_ord, one
from padiz.padiz_test_config import instance
from padiz.potts_bethe import C1, C2, C3
from padiz.symbolic_dynamics import (Itinerary, a_m_template, build_markov_partition, check_block_code_bijection,
                                     count_periodic_points, df_distance, df_exponent, distinct_count,
                                     encode_itinerary, escape_decomposition, full_shift_matrix,
                                     incidence_from_dynamics, induced_block_code, is_admissible,
                                     periodic_block_code, periodic_point_from_word, pi_block_map)


def test_full_shift_partition():
    m = instance('full_shift')
    part = build_markov_partition(m)
    assert part.labels == (C1, C2, C3)
    assert part.tau == (2, 4, 4)
    assert part.is_weak_repeller()
    assert part.kappa[0, 1] == 3 and part.kappa[1, 2] == 4
    incidence = incidence_from_dynamics(part, m)
    assert incidence == full_shift_matrix()
    assert incidence.is_irreducible()


def test_a_m_incidence():
    for name, mm in [('a_1', 1), ('a_2', 2), ('a_3', 3)]:
        m = instance(name)
        part = build_markov_partition(m)
        assert part.size == mm + 3
        assert [count for _, _, count in part.level_counts] == [1] * mm
        incidence = incidence_from_dynamics(part, m)
        assert incidence == a_m_template(mm, m.vq, m.vt)
        assert incidence.labels == a_m_template(mm).labels


def test_a_m_template():
    a = a_m_template(2)
    assert a.labels == ('D1', 'H2', 'H1', 'C2', 'C3')
    assert a.to_list() == [[1, 1, 0, 0, 0],
                           [0, 0, 1, 0, 0],
                           [0, 0, 0, 1, 1],
                           [1, 1, 1, 1, 1],
                           [1, 1, 1, 1, 1]]
    assert a.is_irreducible()
    with pytest.raises(OutOfRegime):
        a_m_template(2, 1, 3)
    with pytest.raises(ValueError):
        a_m_template(0)


def test_traces():
    for mm in range(1, 5):
        a = a_m_template(mm)
        assert [count_periodic_points(a, n) for n in range(1, 9)] == [3 ** n for n in range(1, 9)]
    assert count_periodic_points(np.ones((3, 3), dtype=np.int64), 40) == 3 ** 40


def test_markov_partition_needs_one_mod_three():
    with pytest.raises(OutOfRegime):
        build_markov_partition(instance('two_root'))


def test_pi_block_map():
    assert pi_block_map(2, (0, 0, 0)) == 0
    assert pi_block_map(2, (0, 1, 2)) == 1
    assert pi_block_map(2, (0, 0, 2)) == 2
    assert pi_block_map(2, (1, 0, 0)) == 3
    assert pi_block_map(2, (2, 2, 2)) == 4
    with pytest.raises(BadBlockLength):
        pi_block_map(2, (0, 1))


def test_induced_block_code():
    assert induced_block_code(1, (0, 0, 1, 2)) == (0, 1, 2)
    assert periodic_block_code(1, (0, 1)) == (1, 2)
    assert periodic_block_code(1, (0, 2)) == (1, 3)
    assert is_admissible(periodic_block_code(2, (0, 0, 1)), a_m_template(2), cyclic=True)


def test_block_code_bijection():
    for mm, n in itertools.product(range(1, 4), range(1, 7)):
        check = check_block_code_bijection(mm, n)
        assert check['bijective'] == 1
        assert check['distinct_images'] == check['admissible_cycles'] == 3 ** n


def test_periodic_points_full_shift():
    m = instance('full_shift')
    part = build_markov_partition(m)
    incidence = incidence_from_dynamics(part, m)
    x = periodic_point_from_word(m, part, (0,), incidence)
    assert difference_ord(x, m.fixed_point('x1'))[0] >= 50
    for n in (1, 2):
        words = [w for w in itertools.product(part.symbols, repeat=n) if is_admissible(w, incidence, cyclic=True)]
        points = [periodic_point_from_word(m, part, w, incidence) for w in words]
        assert distinct_count(points, 20) == count_periodic_points(incidence, n)


def test_inadmissible_word():
    m = instance('a_1')
    part = build_markov_partition(m)
    with pytest.raises(InadmissibleWord):
        periodic_point_from_word(m, part, (1, 0))
    with pytest.raises(InadmissibleWord):
        periodic_point_from_word(m, part, ())


def test_df_is_an_isometry_on_period_two():
    m = instance('full_shift')
    part = build_markov_partition(m)
    words = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 1)]
    points = {w: periodic_point_from_word(m, part, w) for w in words}
    for u, v in itertools.combinations(words, 2):
        expected = df_exponent(part, Itinerary(u * 2), Itinerary(v * 2))
        assert difference_ord(points[u], points[v]) == (expected, True)
    assert df_exponent(part, Itinerary((0, 1)), Itinerary((0, 2))) == 6
    assert df_distance(part, Itinerary((0,)), Itinerary((1,))) == Fraction(1, 343)
    with pytest.raises(EqualToHorizon):
        df_exponent(part, Itinerary((0, 1)), Itinerary((0, 1)))


def test_encode_itinerary():
    m = instance('full_shift')
    part = build_markov_partition(m)
    assert encode_itinerary(m, part, m.fixed_point('x1'), 3).symbols == (0, 0, 0)
    assert Itinerary((0, 1, 2)).word(part.labels) == 'C1 C2 C3'
    assert Itinerary((0, 1, 2)).shifted().word() == '12'


def test_escape_decomposition():
    m = instance('a_1')
    part = build_markov_partition(m)
    assert escape_decomposition(m, part, [one(7)], 4) == {'stays': 0, 'basin': 1, 'undecided': 0}
