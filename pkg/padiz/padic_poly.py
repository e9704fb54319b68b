from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from padiz.errors import (HenselHypothesisFailed, MultiplicityUnresolved, OutOfRegime, PrecisionExhausted)
from padiz.padic_core import (PadicNumber, coerce, from_rational, from_residue, int_ord, one, residual_ord,
                              require_prime, zero)
from padiz.padic_functions import ep_membership

Point = Tuple[int, int]


# --------------------------------------------------------------------------
#            Polynomials over Q_p
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Polynomial:
    """ a_0 + a_1 x + ... + a_n x^n, leading coefficient nonzero """
    coefficients: Tuple[PadicNumber, ...]

    def __post_init__(self):
        coefficients = list(self.coefficients)
        while len(coefficients) > 1 and coefficients[-1].is_zero:
            coefficients.pop()
        if not coefficients or coefficients[-1].is_zero:
            raise ValueError('The zero polynomial has no Newton polygon')
        object.__setattr__(self, 'coefficients', tuple(coefficients))

    @classmethod
    def from_rationals(cls, coefficients: Sequence, prime: int, precision: int = None) -> 'Polynomial':
        return cls(tuple(coerce(c, prime, precision) if c != 0 else zero(prime) for c in coefficients))

    @property
    def prime(self) -> int:
        return self.coefficients[-1].prime

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x: PadicNumber) -> PadicNumber:
        acc = self.coefficients[-1]
        for a in reversed(self.coefficients[:-1]):
            acc = acc * x + a
        return acc

    def terms(self, x: PadicNumber) -> List[PadicNumber]:
        return [a * x ** i for i, a in enumerate(self.coefficients)]

    def residual_ord(self, x: PadicNumber) -> int:
        """ ord f(x), or the absolute precision when f(x) vanishes to precision """
        return residual_ord(self.terms(x))[0]

    def derivative(self) -> 'Polynomial':
        if self.degree == 0:
            raise ValueError("The derivative of a constant is the zero polynomial")
        return Polynomial(tuple(a * i for i, a in enumerate(self.coefficients) if i > 0))


# --------------------------------------------------------------------------
#            Newton polygons
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Segment:
    start: Point
    end: Point
    slope: Fraction
    length: int

    @property
    def has_rational_roots_possible(self) -> bool:
        """ A non-integer slope certifies that the roots of that norm are not in Q_p """
        return self.slope.denominator == 1

    @property
    def root_ord(self) -> Fraction:
        return -self.slope


@dataclass(frozen=True)
class NewtonPolygon:
    points: Tuple[Point, ...]
    vertices: Tuple[Point, ...]
    segments: Tuple[Segment, ...]

    def root_norm_exponents(self) -> List[Tuple[Fraction, int]]:
        """ [(slope, multiplicity)]: that many roots of norm p^slope in the algebraic closure """
        return [(s.slope, s.length) for s in self.segments]


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def newton_polygon(f: Polynomial) -> NewtonPolygon:
    points = tuple((i, a.valuation) for i, a in enumerate(f.coefficients) if not a.is_zero)
    hull: List[Point] = []
    for pt in points:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    segments = tuple(Segment(start=a, end=b, slope=Fraction(b[1] - a[1], b[0] - a[0]), length=b[0] - a[0])
                     for a, b in zip(hull[:-1], hull[1:]))
    return NewtonPolygon(points=points, vertices=tuple(hull), segments=segments)


# --------------------------------------------------------------------------
#            Integer residue machinery
# --------------------------------------------------------------------------

def _integer_coefficients(f: Polynomial, shift: int = 0, normalize: bool = True) -> Tuple[List[int], int]:
    """ Integer residues of p^-c f(p^shift u) modulo p^top, c the content valuation when normalizing """
    scaled = [a.shift(i * shift) for i, a in enumerate(f.coefficients)]
    nonzero = [b for b in scaled if not b.is_zero]
    c = min(b.valuation for b in nonzero) if normalize else 0
    if c < 0 or any(b.valuation - c < 0 for b in nonzero):
        raise HenselHypothesisFailed('Coefficients are not p-adic integers')
    top = min(b.absolute_precision for b in nonzero) - c
    return [b.shift(-c).residue(top) for b in scaled], top


def _eval_mod(coefficients: Sequence[int], x: int, modulus: int) -> int:
    acc = 0
    for a in reversed(coefficients):
        acc = (acc * x + a) % modulus
    return acc


def _derivative_ints(coefficients: Sequence[int]) -> List[int]:
    return [i * a for i, a in enumerate(coefficients) if i > 0] or [0]


def _taylor_shift(coefficients: Sequence[int], r: int) -> List[int]:
    """ Coefficients of g(y + r) """
    c = list(coefficients)
    n = len(c)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            c[j] += r * c[j + 1]
    return c


def _newton_lift(coefficients: Sequence[int], r: int, prime: int, top: int, i: int) -> int:
    """ Root of f modulo p^(top-i) near r, given ord f'(r) = i and ord f(r) >= 2i+1 """
    modulus = prime ** top
    root_modulus = prime ** (top - i)
    scale = prime ** i
    derivative = _derivative_ints(coefficients)
    x = r
    for _ in range(top + 2):
        fx = _eval_mod(coefficients, x, modulus)
        if fx == 0:
            return x % root_modulus
        fpx = _eval_mod(derivative, x, modulus)
        delta = (fx // scale) * pow(fpx // scale, -1, root_modulus)
        x = (x - delta) % root_modulus
    raise PrecisionExhausted('Newton iteration did not settle')


# --------------------------------------------------------------------------
#            Hensel lifting
# --------------------------------------------------------------------------

def hensel_lift(f: Polynomial, seed: PadicNumber, i: int = 0) -> PadicNumber:
    """ Unique root x0 of f with x0 = seed mod p^(i+1)

          requires  f(seed) = 0 mod p^(2i+1),  f'(seed) = 0 mod p^i,  f'(seed) != 0 mod p^(i+1)
    """
    p = f.prime
    coefficients, top = _integer_coefficients(f, normalize=False)
    if top < 2 * i + 1:
        raise PrecisionExhausted('Coefficients known only modulo p^' + str(top))
    r = seed.residue(min(top, seed.absolute_precision)) if not seed.is_zero else 0
    if _eval_mod(coefficients, r, p ** (2 * i + 1)) != 0:
        raise HenselHypothesisFailed('f(seed) = 0 mod p^%d fails' % (2 * i + 1))
    fp = _eval_mod(_derivative_ints(coefficients), r, p ** (i + 1))
    if i > 0 and fp % p ** i != 0:
        raise HenselHypothesisFailed("f'(seed) = 0 mod p^%d fails" % i)
    if fp == 0:
        raise HenselHypothesisFailed("f'(seed) != 0 mod p^%d fails" % (i + 1))
    root = _newton_lift(coefficients, r, p, top, i)
    # re-verify by evaluation
    assert _eval_mod(coefficients, root, p ** top) == 0, 'Lifted residue is not a root'
    assert (root - r) % p ** (i + 1) == 0, 'Lifted root left the seed class'
    return from_residue(root, p, top - i)


# --------------------------------------------------------------------------
#            Roots in Q_p
# --------------------------------------------------------------------------

def _zp_roots(coefficients: List[int], prime: int, top: int, residues) -> List[Tuple[int, int]]:
    """ Roots in Z_p with residue in `residues`, as (root mod p^precision, precision) """
    found = []
    derivative = _derivative_ints(coefficients)
    for r in residues:
        if _eval_mod(coefficients, r, prime) != 0:
            continue
        if _eval_mod(derivative, r, prime) != 0:
            found.append((_newton_lift(coefficients, r, prime, top, 0), top))
            continue
        modulus = prime ** top
        shifted = [(b * prime ** j) % modulus for j, b in enumerate(_taylor_shift(coefficients, r))]
        nonzero = [int_ord(b, prime) for b in shifted if b]
        if not nonzero or top - min(nonzero) < 1:
            raise MultiplicityUnresolved('Residue %d does not separate within precision' % r)
        c = min(nonzero)
        reduced = [(b // prime ** c) % prime ** (top - c) for b in shifted]
        for y, precision in _zp_roots(reduced, prime, top - c, range(prime)):
            found.append((r + prime * y, precision + 1))
    return found


def polynomial_roots(f: Polynomial) -> List[PadicNumber]:
    """ All roots of f in Q_p, ordered by segment then residue """
    p = f.prime
    roots = []
    coefficients = list(f.coefficients)
    if coefficients[0].is_zero:
        roots.append(zero(p))
        while coefficients[0].is_zero:
            coefficients.pop(0)
        if len(coefficients) == 1:
            return roots
        f = Polynomial(tuple(coefficients))
    for segment in newton_polygon(f).segments:
        if segment.slope.denominator != 1:
            continue
        s = -segment.slope.numerator
        integers, top = _integer_coefficients(f, shift=s)
        for u, precision in _zp_roots(integers, p, top, range(1, p)):
            roots.append(from_residue(u, p, precision).shift(s))
    return roots


# --------------------------------------------------------------------------
#            Quadratic congruences
# --------------------------------------------------------------------------

def quadratic_congruence_roots(a: int, b: int, c: int, p: int) -> List[int]:
    """ All t in 0..p-1 with a t^2 + b t + c = 0 mod p, ascending """
    require_prime(p)
    t = np.arange(p, dtype=np.int64)
    values = ((a % p) * t % p * t + (b % p) * t + (c % p)) % p
    return [int(x) for x in np.flatnonzero(values == 0)]


def minus_three_is_square(p: int) -> bool:
    """ Solvability of s^2 = -3 mod p, which holds iff p = 1 mod 3 for p >= 5 """
    return len(quadratic_congruence_roots(1, 0, 3, p)) > 0


# --------------------------------------------------------------------------
#            The fixed-point cubic
# --------------------------------------------------------------------------

REGIME_ONE_MOD_THREE = 'p=1 mod 3'
REGIME_TWO_MOD_THREE = 'p=2 mod 3'
REGIME_THREE = 'p=3'
REGIME_TWO = 'p=2'


@dataclass(frozen=True)
class CubicRoots:
    roots: Tuple[Tuple[PadicNumber, int], ...]
    regime: str
    polygon: NewtonPolygon
    certificate: str
    cubic: Optional[Polynomial] = field(default=None, compare=False)

    @property
    def count(self) -> int:
        return len(self.roots)

    @property
    def values(self) -> List[PadicNumber]:
        return [r for r, _ in self.roots]


def fixed_point_cubic(theta: PadicNumber, q: PadicNumber) -> Polynomial:
    """ h(y) = y^3 - (1+θ+θ^2) y^2 - (2θ+1)(1-θ-q) y - (1-θ-q)^2 """
    p = theta.prime
    s = 1 - theta - q
    return Polynomial((-(s * s), -((2 * theta + 1) * s), -(1 + theta + theta * theta), one(p, theta.precision)))


def cubic_regime(p: int) -> str:
    if p == 2:
        return REGIME_TWO
    if p == 3:
        return REGIME_THREE
    return REGIME_ONE_MOD_THREE if p % 3 == 1 else REGIME_TWO_MOD_THREE


def check_regime(theta: PadicNumber, q: PadicNumber) -> Tuple[int, int]:
    """ (ord(θ-1), ord(q)) after checking θ in E_p and 0 < |θ-1| < |q| < 1 """
    if q.is_zero:
        raise OutOfRegime('q = 0')
    if not ep_membership(theta):
        raise OutOfRegime('θ is not in E_p')
    vt, exact = residual_ord([theta, -one(theta.prime, theta.precision)])
    if not exact:
        raise OutOfRegime('θ = 1 to precision')
    vq = q.valuation
    if not 0 < vq < vt:
        raise OutOfRegime('Need 0 < |θ-1| < |q| < 1, got ord(θ-1)=%s, ord(q)=%s' % (vt, vq))
    return int(vt), int(vq)


def fixed_point_cubic_roots(theta: PadicNumber, q: PadicNumber) -> CubicRoots:
    """ Roots in Q_p of the fixed-point cubic, seeded from congruences and lifted by Hensel """
    vt, vq = check_regime(theta, q)
    p = theta.prime
    h = fixed_point_cubic(theta, q)
    polygon = newton_polygon(h)
    regime = cubic_regime(p)
    three = from_rational(3, 1, p, theta.precision)

    if regime == REGIME_TWO:
        y1 = hensel_lift(h, from_rational(1, 1, p, theta.precision), 0)
        return CubicRoots(((y1, y1.leading_digit()),), regime, polygon,
                          'seed 1 mod 2 lifts; the other two roots are not 2-adic', h)

    if regime == REGIME_THREE:
        if vq == 1:
            return CubicRoots((), regime, polygon,
                              'single Newton segment of slope %s' % polygon.segments[0].slope, h)
        if vq == 2:
            q_star = q.shift(-vq).leading_digit()
            y_bar = quadratic_congruence_roots(0, 2, -(q_star * q_star - q_star), 3)[0]
            seed = from_rational(3 + 9 * y_bar, 1, p, theta.precision)
        else:
            seed = three
        y1 = hensel_lift(h, seed, 2)
        return CubicRoots(((y1, y1.leading_digit()),), regime, polygon, 'seed %s lifts with i=2'
                          % seed.residue(3), h)

    y1 = hensel_lift(h, three, 0)
    c_star = (1 - theta - q).shift(-vq)
    if c_star.valuation != 0:
        raise OutOfRegime('|1-θ-q| must equal |q|')
    c0 = c_star.leading_digit()
    residues = quadratic_congruence_roots(3, 3 * c0, c0 * c0, p)
    if regime == REGIME_TWO_MOD_THREE:
        return CubicRoots(((y1, y1.leading_digit()),), regime, polygon,
                          '3t^2 + 3c t + c^2 = 0 mod p has no solution', h)
    # g(t) = h(p^r t) / p^(2r) carries the two small roots as unit roots
    a0, a1, a2, a3 = h.coefficients
    g = Polynomial((a0.shift(-2 * vq), a1.shift(-vq), a2, a3.shift(vq)))
    roots = [(y1, y1.leading_digit())]
    for t in residues:
        root = hensel_lift(g, from_rational(t, 1, p, theta.precision), 0)
        roots.append((root.shift(vq), t))
    return CubicRoots(tuple(roots), regime, polygon, 'residues %s lift' % residues, h)
