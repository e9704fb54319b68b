
# python -m pytest tests/test_gibbs_measures.py

from fractions import Fraction

import pytest

from padiz.errors import (DegenerateForm, InadmissibleAlpha, Infeasible, NotACycle, OutOfDomain, OutOfRegime)
from padiz.gibbs_measures import (BoundaryFunction, CayleyTree, Configuration, check_compatibility,
                                  compatibility_feasible, cycle_to_measure, excluded_alpha_sizes,
                                  finite_volume_measure, hamiltonian, hgm_lower_bound, measure_values,
                                  partition_count, ti_residual_ord, ti_solve, ti_system_image,
                                  tree_recursion_F)
from padiz.padic_core import coerce, from_rational, one, zero
from padiz.padic_functions import exp_p, ln_p
from padiz.padiz_test_config import instance
from padiz.symbolic_dynamics import build_markov_partition, periodic_point_from_word


def test_cayley_tree():
    tree = CayleyTree(3, 1)
    assert tree.size == 4 and len(tree.edges()) == 3
    assert tree.vertices() == [(), (1,), (2,), (3,)]
    bigger = CayleyTree(3, 2)
    assert bigger.size == 13 and len(bigger.edges()) == 12
    assert bigger.truncated() == tree


def test_configurations():
    tree = CayleyTree(3, 1)
    sigma = Configuration.constant(tree, 2)
    extended = Configuration.concatenate(sigma, (1,) * 9)
    assert extended.tree == CayleyTree(3, 2)
    assert extended.restricted() == sigma
    assert extended.assignment()[(3, 3)] == 1
    with pytest.raises(ValueError):
        Configuration.concatenate(sigma, (1,) * 3)


def test_hamiltonian():
    J = from_rational(7, 1, 7)
    tree = CayleyTree(3, 1)
    assert hamiltonian(tree, Configuration.constant(tree, 1), J) == 21
    assert hamiltonian(tree, Configuration(tree, (1, 1, 2, 2)), J) == 7
    deeper = CayleyTree(3, 2)
    assert hamiltonian(deeper, Configuration.constant(deeper, 3), J) == 84
    with pytest.raises(OutOfDomain):
        hamiltonian(tree, Configuration.constant(tree, 1), one(7))


def test_uniform_measure():
    tree = CayleyTree(3, 1)
    h = BoundaryFunction(((zero(2),),), 2)
    values = measure_values(tree, h, zero(2))
    assert len(values) == 16
    assert all(v == Fraction(1, 16) for v in values.values())
    assert finite_volume_measure(tree, Configuration.constant(tree, 1), h, zero(2)).value == Fraction(1, 16)


def test_measure_sums_to_one():
    tree = CayleyTree(3, 1)
    h = BoundaryFunction(((from_rational(3, 1, 3), zero(3)),), 3)
    values = measure_values(tree, h, from_rational(3, 1, 3))
    assert sum(values.values(), zero(3)) == 1


def test_enumeration_guard():
    h = BoundaryFunction(((zero(7),) * 6,), 7)
    with pytest.raises(Infeasible):
        measure_values(CayleyTree(3, 2), h, zero(7))
    assert compatibility_feasible(7, 3, 1)
    assert compatibility_feasible(100, 3, 1)
    assert not compatibility_feasible(101, 3, 1)
    assert compatibility_feasible(2, 3, 2)
    assert compatibility_feasible(3, 3, 2)
    assert not compatibility_feasible(7, 3, 2)
    assert not compatibility_feasible(2, 3, 3)
    assert not compatibility_feasible(7, 3, 0)


def test_tree_recursion_at_zero():
    theta = from_rational(1 + 7 ** 2, 1, 7)
    assert all(x.is_zero for x in tree_recursion_F((zero(7),) * 6, theta, 7))
    with pytest.raises(ValueError):
        tree_recursion_F((zero(7),) * 5, theta, 7)


def test_ti_solve_form_a():
    theta = from_rational(1 + 7 ** 2, 1, 7)
    solutions = ti_solve('A', 7, theta)
    assert len(solutions) == 1
    assert all(z == 1 for z in solutions[0])
    assert ti_residual_ord(solutions[0], theta)[1]


def test_ti_solve_form_c():
    theta = from_rational(1 + 7 ** 2, 1, 7)
    solutions = ti_solve('c', 7, theta, (3, 3))
    assert solutions
    for z in solutions:
        assert partition_count(z) == 2
        assert all(x == 1 for x in z[:3])
        assert not z[3] == 1
        assert ti_residual_ord(z, theta)[1]


def test_ti_solve_rejections():
    theta = from_rational(1 + 7 ** 2, 1, 7)
    with pytest.raises(OutOfRegime):
        ti_solve('E', 7, from_rational(-6, 1, 7), (2, 2, 2))
    with pytest.raises(DegenerateForm):
        ti_solve('D', 7, from_rational(-8, 1, 7), (3, 3))
    with pytest.raises(OutOfRegime):
        ti_solve('A', 10, theta)
    with pytest.raises(ValueError):
        ti_solve('C', 7, theta, (3, 2))
    with pytest.raises(ValueError):
        ti_solve('F', 7, theta)


def test_compatibility_of_a_recursion_solution():
    J = coerce(7, 7, 64)
    theta = exp_p(J)
    h = BoundaryFunction.translation_invariant(ti_solve('A', 7, theta)[0])
    report = check_compatibility(CayleyTree(3, 1), h, J, 1, precision=64)
    assert report.passed
    assert len(report.residuals) == 7


def test_compatibility_fails_off_the_recursion():
    J = coerce(7, 7, 64)
    perturbed = BoundaryFunction(((coerce(7, 7, 64),) + (zero(7),) * 5,), 7)
    report = check_compatibility(CayleyTree(3, 1), perturbed, J, 1, precision=64)
    assert not report.passed
    assert report.min_residual < report.threshold



def test_compatibility_guard_counts_every_extension():
    J = coerce(7, 7, 64)
    h = BoundaryFunction.translation_invariant(ti_solve('A', 7, exp_p(J))[0])
    with pytest.raises(Infeasible):
        check_compatibility(CayleyTree(3, 1), h, J, 2)
    with pytest.raises(Infeasible):
        check_compatibility(CayleyTree(3, 1), h, J, 1, guard=7 ** 4 - 1)


def test_compatibility_at_depth_two():
    J = coerce(4, 2, 64)
    h = BoundaryFunction.translation_invariant(ti_solve('A', 2, exp_p(J))[0])
    report = check_compatibility(CayleyTree(3, 2), h, J, 2, precision=64, margin=20)
    assert report.passed
    assert len(report.residuals) == 2 ** 4
    perturbed = BoundaryFunction(((coerce(4, 2, 64),),), 2)
    assert not check_compatibility(CayleyTree(3, 2), perturbed, J, 2, precision=64, margin=20).passed


def test_hgm_lower_bound():
    assert hgm_lower_bound(1, 7, 7) == 192
    assert hgm_lower_bound(2, 7, 7) == 576
    assert hgm_lower_bound(1, 14, 7) == 19428
    assert excluded_alpha_sizes(14, 7) == [7]
    assert excluded_alpha_sizes(7, 7) == []
    with pytest.raises(OutOfRegime):
        hgm_lower_bound(1, 10, 7)


def test_two_cycle_lifts_to_a_periodic_measure():
    m = instance('full_shift')
    part = build_markov_partition(m)
    x = periodic_point_from_word(m, part, (1, 2))
    cycle = [x, m.eval_map(x)]
    h = cycle_to_measure(cycle, 1, 7, m.theta)
    assert h.period == 2 and h.q_states == 7
    assert all(c.is_zero for c in h.vectors[0][1:])
    image = ti_system_image(h.z_vectors()[1], m.theta)
    assert ln_p(image[0]) == h.vectors[0][0]
    assert ln_p(cycle[0]) == h.vectors[0][0]
    with pytest.raises(NotACycle):
        cycle_to_measure([x, x], 1, 7, m.theta)


def test_inadmissible_alpha():
    theta = from_rational(1 + 7 ** 3, 1, 7)
    with pytest.raises(InadmissibleAlpha):
        cycle_to_measure([one(7)], 7, 14, theta)
    with pytest.raises(InadmissibleAlpha):
        cycle_to_measure([one(7)], 0, 7, theta)
