
# python -m pytest tests/test_padic_poly.py

from fractions import Fraction

import pytest

from padiz.errors import HenselHypothesisFailed, OutOfRegime
from padiz.padic_core import difference_ord, from_rational
from padiz.padic_poly import (REGIME_ONE_MOD_THREE, REGIME_THREE, REGIME_TWO, Polynomial, check_regime,
                              cubic_regime, fixed_point_cubic_roots, hensel_lift, minus_three_is_square,
                              newton_polygon, polynomial_roots, quadratic_congruence_roots)


def poly(coefficients, p, precision=40):
    return Polynomial.from_rationals(coefficients, p, precision)


def test_newton_polygon_single_slope():
    polygon = newton_polygon(poly([9, 9, 3, 1], 3))
    assert polygon.root_norm_exponents() == [(Fraction(-2, 3), 3)]
    assert not polygon.segments[0].has_rational_roots_possible


def test_newton_polygon_two_slopes():
    polygon = newton_polygon(poly([81, 27, 3, 1], 3))
    assert polygon.root_norm_exponents() == [(Fraction(-3, 2), 2), (Fraction(-1), 1)]


def test_newton_polygon_linear():
    polygon = newton_polygon(poly([-7, 1], 7))
    assert polygon.root_norm_exponents() == [(Fraction(-1), 1)]
    assert polygon.segments[0].root_ord == 1


def test_zero_polynomial():
    with pytest.raises(ValueError):
        poly([0, 0], 7)


def test_hensel_square_root():
    root = hensel_lift(poly([-2, 0, 1], 7), from_rational(3, 1, 7), 0)
    assert root.residue(2) == 10
    assert root * root == 2


def test_hensel_hypothesis():
    with pytest.raises(HenselHypothesisFailed):
        hensel_lift(poly([-2, 0, 1], 7), from_rational(1, 1, 7), 0)


def test_polynomial_roots_by_segment():
    # (x - 1)(x - 7)(x - 49)
    roots = polynomial_roots(poly([-343, 399, -57, 1], 7))
    assert len(roots) == 3
    assert roots[0] == 49
    assert roots[1] == 7
    assert roots[2] == 1


def test_polynomial_roots_none():
    assert polynomial_roots(poly([-7, 0, 0, 1], 7)) == []
    assert polynomial_roots(poly([1, 0, 1], 7)) == []


def test_polynomial_roots_zero_root():
    roots = polynomial_roots(poly([0, -2, 1], 5))
    assert roots[0].is_zero
    assert roots[1] == 2


def test_polynomial_roots_close_pair():
    # (x - 1)(x - 1 - 7^3), a pair that separates three digits down
    roots = polynomial_roots(poly([1 + 7 ** 3, -(2 + 7 ** 3), 1], 7))
    assert len(roots) == 2
    ords = sorted(difference_ord(r, from_rational(1, 1, 7, 40))[0] for r in roots)
    assert ords[0] == 3 and ords[1] > 30


def test_quadratic_congruence():
    assert quadratic_congruence_roots(3, 4, 1, 7) == [2, 6]
    assert minus_three_is_square(7)
    assert minus_three_is_square(13)
    assert not minus_three_is_square(5)


def test_cubic_regime():
    assert cubic_regime(7) == REGIME_ONE_MOD_THREE
    assert cubic_regime(3) == REGIME_THREE
    assert cubic_regime(2) == REGIME_TWO


def test_check_regime():
    assert check_regime(from_rational(1 + 7 ** 3, 1, 7), from_rational(7, 1, 7)) == (3, 1)
    with pytest.raises(OutOfRegime):
        check_regime(from_rational(1 + 7, 1, 7), from_rational(49, 1, 7))
    with pytest.raises(OutOfRegime):
        check_regime(from_rational(2, 1, 7), from_rational(7, 1, 7))


def test_fixed_point_cubic_one_mod_three():
    cubic = fixed_point_cubic_roots(from_rational(1 + 7 ** 3, 1, 7), from_rational(7, 1, 7))
    assert cubic.count == 3
    y1, y2, y3 = cubic.values
    assert y1.valuation == 0
    assert y2.valuation == 1 and y3.valuation == 1
    assert y1.residue(2) == 45
    assert sorted(t for _, t in cubic.roots[1:]) == [2, 6]
    for y in cubic.values:
        assert cubic.cubic.residual_ord(y) >= 40 - 6


def test_fixed_point_cubic_three_no_root():
    cubic = fixed_point_cubic_roots(from_rational(10, 1, 3), from_rational(3, 1, 3))
    assert cubic.count == 0
    assert cubic.polygon.root_norm_exponents() == [(Fraction(-2, 3), 3)]


def test_fixed_point_cubic_three_one_root():
    cubic = fixed_point_cubic_roots(from_rational(1 + 3 ** 4, 1, 3), from_rational(9, 1, 3))
    assert cubic.count == 1
    y = cubic.values[0]
    assert difference_ord(y, from_rational(3, 1, 3))[0] >= 2


def test_fixed_point_cubic_two():
    cubic = fixed_point_cubic_roots(from_rational(5, 1, 2), from_rational(2, 1, 2))
    assert cubic.count == 1
    y = cubic.values[0]
    assert y.valuation == 0
    assert y.residue(1) == 1
