from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

from padiz.conventions import PLUS_INFINITY, default_precision
from padiz.errors import NotScalingDomain, OutOfRegime, PrecisionExhausted, SingularInput
from padiz.padic_core import Ball, PadicNumber, Sphere, coerce, difference_ord, norm_str, one
from padiz.padic_functions import exp_p
from padiz.padic_poly import (REGIME_ONE_MOD_THREE, REGIME_THREE, REGIME_TWO, CubicRoots,
                              check_regime, cubic_regime, fixed_point_cubic_roots)

ParameterSource = Callable[[int], Tuple[PadicNumber, PadicNumber]]

# Region tags
A0, A1, A0_INF, A2, A3 = 'A0', 'A1', 'A0_INF', 'A2', 'A3'
A1_INF, C1, A23_INF, C2, C3, A_INF = 'A1_INF', 'C1', 'A23_INF', 'C2', 'C3', 'A_INF'
A1_INF_1, A1_INF_2 = 'A1_INF_1', 'A1_INF_2'
A_INF_1, A_INF_2, A_INF_3 = 'A_INF_1', 'A_INF_2', 'A_INF_3'
SINGULAR = 'SINGULAR'

ONE_MOD_THREE_TAGS = (A0, A1, A0_INF, A2, A1_INF, C1, A3, A23_INF, C2, C3, A_INF, SINGULAR)
THREE_TAGS = (A0, A1, A0_INF, A2, A1_INF_1, A1_INF_2, A_INF, SINGULAR)
TWO_TAGS = (A0, A1, A0_INF, A2, A1_INF_1, A1_INF_2, A_INF_1, A_INF_2, A_INF_3, SINGULAR)

ATTRACTING, INDIFFERENT, REPELLING = 'attracting', 'indifferent', 'repelling'


@dataclass(frozen=True)
class FixedPointInfo:
    label: str
    point: PadicNumber
    multiplier: PadicNumber
    multiplier_ord: int
    classification: str
    residual_ord: int

    @property
    def multiplier_norm(self) -> Fraction:
        return Fraction(self.point.prime) ** (-self.multiplier_ord)


@dataclass(frozen=True)
class Region:
    tag: str
    d_one: float       # ord(x - 1)
    d_inf: float       # ord(x - x_inf)


# Outcomes of basin_decide

@dataclass(frozen=True)
class Converges:
    steps: int
    kind = 'Converges'


@dataclass(frozen=True)
class InJuliaPartition:
    symbol: str
    steps: int = 0
    kind = 'InJuliaPartition'


@dataclass(frozen=True)
class HitsSingular:
    depth: int
    kind = 'HitsSingular'


@dataclass(frozen=True)
class Undecided:
    steps: int
    kind = 'Undecided'


def _exceeds(x: PadicNumber, y: PadicNumber, bound) -> bool:
    """ ord(x - y) > bound """
    o, exact = difference_ord(x, y)
    if o > bound:
        return True
    if exact:
        return False
    raise PrecisionExhausted('ord(x - y) > %s is undecidable at precision' % bound)


class PottsBetheMap:
    """ f(x) = ((θx + q - 1)/(x + θ + q - 2))^k, evaluated as (θ + c/(x - x_inf))^k with c = (θ-1)(1-θ-q) """

    def __init__(self, theta: PadicNumber, q: PadicNumber, k: int = 3, parameter_source: ParameterSource = None):
        self.prime = theta.prime
        self.theta = theta
        self.q = q
        self.k = int(k)
        self.precision = theta.precision
        self._parameter_source = parameter_source
        self.vt, self.vq = check_regime(theta, q)
        self.vr = self.vq + self.vt
        self.d = self.vt - self.vq
        self.m_level = self.vq // self.d
        self.prime_regime = cubic_regime(self.prime)
        self.theta_minus_one = theta - 1
        self.singular_point = 2 - theta - q
        self.c = self.theta_minus_one * (1 - theta - q)
        self.one = one(self.prime, self.precision)
        self.warnings: List[dict] = []
        self.separation_verified = None
        self.cubic: Optional[CubicRoots] = None
        self._fixed_points: Optional[List[FixedPointInfo]] = None
        if self.k == 3:
            self.cubic = fixed_point_cubic_roots(theta, q)
            self._fixed_points = self._fixed_points_implementation()

    # --------------------------------------------------------------------------
    #            Construction paths
    # --------------------------------------------------------------------------

    @classmethod
    def from_rationals(cls, prime: int, theta, q, precision: int = None, k: int = 3) -> 'PottsBetheMap':
        def source(n):
            return coerce(theta, prime, n), coerce(q, prime, n)
        return cls(*source(int(precision or default_precision())), k=k, parameter_source=source)

    @classmethod
    def from_padics(cls, theta: PadicNumber, q: PadicNumber, k: int = 3) -> 'PottsBetheMap':
        return cls(theta, q, k=k)

    @classmethod
    def from_coupling(cls, prime: int, coupling, q, precision: int = None, k: int = 3) -> 'PottsBetheMap':
        """ θ = exp_p(J) """
        def source(n):
            return exp_p(coerce(coupling, prime, n)).with_precision(n), coerce(q, prime, n)
        return cls(*source(int(precision or default_precision())), k=k, parameter_source=source)

    @classmethod
    def reduced(cls, theta: PadicNumber, q: PadicNumber, alpha_size: int, k: int = 3,
                parameter_source: ParameterSource = None) -> 'PottsBetheMap':
        """ G_{θ,α,q,k} is conjugate to f_{Θ,Q,k} with Θ = (θ-1)/|α| + 1, Q = q/|α| """
        if alpha_size < 1:
            raise OutOfRegime('|α| must be positive')

        def reduce(t, qq):
            return (t - 1) / alpha_size + 1, qq / alpha_size

        source = (lambda n: reduce(*parameter_source(n))) if parameter_source else None
        return cls(*reduce(theta, q), k=k, parameter_source=source)

    def lifted(self, extra_digits: int) -> 'PottsBetheMap':
        """ The same map rebuilt with extra digits of precision, when the parameters can be regenerated """
        if self._parameter_source is None or extra_digits <= 0:
            return self
        return PottsBetheMap(*self._parameter_source(self.precision + extra_digits), k=self.k,
                             parameter_source=self._parameter_source)

    # --------------------------------------------------------------------------
    #            Evaluation
    # --------------------------------------------------------------------------

    def _offset(self, x: PadicNumber) -> PadicNumber:
        try:
            return x - self.singular_point
        except PrecisionExhausted:
            raise SingularInput('x equals the singular point to precision')

    def eval_map(self, x: PadicNumber) -> PadicNumber:
        delta = self._offset(x)
        return (self.theta + self.c / delta) ** self.k

    def cube_root_argument(self, x: PadicNumber) -> PadicNumber:
        """ w(x) = θ + c/(x - x_inf), so that f(x) = w(x)^k """
        return self.theta + self.c / self._offset(x)

    def derivative_multiplier(self, x: PadicNumber) -> PadicNumber:
        delta = self._offset(x)
        w = self.theta + self.c / delta
        return -(self.k * self.c * w ** (self.k - 1)) / (delta * delta)

    def iterate(self, x: PadicNumber, n: int) -> PadicNumber:
        for _ in range(n):
            x = self.eval_map(x)
        return x

    # --------------------------------------------------------------------------
    #            Fixed points
    # --------------------------------------------------------------------------

    def _fixed_point_info(self, label: str, x: PadicNumber) -> FixedPointInfo:
        multiplier = self.derivative_multiplier(x)
        v = int(multiplier.valuation)
        classification = ATTRACTING if v > 0 else (INDIFFERENT if v == 0 else REPELLING)
        residual = difference_ord(self.eval_map(x), x)[0]
        return FixedPointInfo(label=label, point=x, multiplier=multiplier, multiplier_ord=v,
                              classification=classification, residual_ord=residual)

    def _fixed_points_implementation(self) -> List[FixedPointInfo]:
        infos = [self._fixed_point_info('x0', self.one)]
        for i, y in enumerate(self.cubic.values):
            infos.append(self._fixed_point_info('x%d' % (i + 1), self.singular_point + self.theta_minus_one * y))
        if self.prime_regime == REGIME_ONE_MOD_THREE and len(infos) == 4:
            x1 = infos[1].point
            separations = [difference_ord(x1, info.point)[0] for info in infos[2:]]
            self.separation_verified = all(s == self.vt for s in separations)
            if not self.separation_verified:
                self.warnings.append({'operation': 'fixed_points', 'message': '|x1 - xi| != |θ-1|',
                                      'separations': [str(s) for s in separations]})
        return infos

    def fixed_points(self) -> List[FixedPointInfo]:
        if self._fixed_points is None:
            raise OutOfRegime('Fixed points are only computed for k = 3')
        return list(self._fixed_points)

    def fixed_point(self, label: str) -> Optional[PadicNumber]:
        for info in self.fixed_points():
            if info.label == label:
                return info.point
        return None

    # --------------------------------------------------------------------------
    #            Regions
    # --------------------------------------------------------------------------

    def region_tags(self) -> Tuple[str, ...]:
        if self.prime_regime == REGIME_ONE_MOD_THREE:
            return ONE_MOD_THREE_TAGS
        return THREE_TAGS if self.prime_regime == REGIME_THREE else TWO_TAGS

    def classify_region(self, x: PadicNumber) -> Region:
        vq, vt, vr = self.vq, self.vt, self.vr
        d_inf, exact_inf = difference_ord(x, self.singular_point)
        if not exact_inf:
            return Region(SINGULAR, vq, PLUS_INFINITY)
        d_one, exact_one = difference_ord(x, self.one)
        if d_one > vq:
            return Region(A0, d_one, d_inf)
        if not exact_one:
            raise PrecisionExhausted('ord(x - 1) is undecidable at precision')
        if d_one < vq:
            return Region(A1, d_one, d_inf)
        if d_inf == vq:
            return Region(A0_INF, d_one, d_inf)
        return Region(self._tag_near_singular(x, d_inf), d_one, d_inf)

    def _tag_near_singular(self, x: PadicNumber, d_inf: int) -> str:
        vt, vr = self.vt, self.vr
        x1 = self.fixed_point('x1') if self._fixed_points else None
        if self.prime_regime == REGIME_ONE_MOD_THREE:
            if d_inf < vt:
                return A2
            if d_inf == vt:
                return C1 if _exceeds(x, x1, vt) else A1_INF
            if d_inf < vr:
                return A3
            if d_inf == vr:
                if _exceeds(x, self.fixed_point('x2'), vr):
                    return C2
                if _exceeds(x, self.fixed_point('x3'), vr):
                    return C3
                return A23_INF
            return A_INF
        if self.prime_regime == REGIME_THREE:
            if d_inf <= vt:
                return A2
            if d_inf == vt + 1:
                return A1_INF_2 if x1 is not None and _exceeds(x, x1, vt + 1) else A1_INF_1
            return A_INF
        if d_inf < vt:
            return A2
        if d_inf == vt:
            return A1_INF_2 if _exceeds(x, x1, vt) else A1_INF_1
        if d_inf < vr:
            return A_INF_1
        return A_INF_2 if d_inf == vr else A_INF_3

    # --------------------------------------------------------------------------
    #            Exact local scaling
    # --------------------------------------------------------------------------

    def scaling_balls(self) -> List[Tuple[str, Ball, int]]:
        """ (label, ball, τ) with |f(x) - f(y)| = p^τ |x - y| on the ball """
        if self._fixed_points is None:
            return []
        x1 = self.fixed_point('x1')
        if self.prime_regime == REGIME_ONE_MOD_THREE:
            return [(C1, Ball(x1, -self.vt - 1), self.d),
                    (C2, Ball(self.fixed_point('x2'), -self.vr - 1), self.vr),
                    (C3, Ball(self.fixed_point('x3'), -self.vr - 1), self.vr)]
        if self.prime_regime == REGIME_THREE and x1 is not None:
            return [(A1_INF_2, Ball(x1, -self.vt - 2), self.d + 1)]
        if self.prime_regime == REGIME_TWO:
            return [(A1_INF_2, Ball(x1, -self.vt - 1), self.d)]
        return []

    def local_scaling_exponent(self, b: Ball) -> int:
        for label, ball, tau in self.scaling_balls():
            if b.closed_radius_exp <= ball.closed_radius_exp and ball.contains(b.center):
                return tau
        raise NotScalingDomain(str(b) + ' is not inside a region of exact scaling')

    def local_scaling_factor(self, b: Ball) -> Fraction:
        return Fraction(self.prime) ** self.local_scaling_exponent(b)

    def ball_image(self, b: Ball) -> Ball:
        tau = self.local_scaling_exponent(b)
        return Ball(self.eval_map(b.center), b.closed_radius_exp + tau)

    def sphere_image(self, s: Sphere) -> Sphere:
        tau = self.local_scaling_exponent(Ball(s.center, s.radius_exp))
        return Sphere(self.eval_map(s.center), s.radius_exp + tau)

    # --------------------------------------------------------------------------
    #            Basin of attraction
    # --------------------------------------------------------------------------

    def default_partition(self) -> List[Tuple[str, Ball]]:
        return [(label, ball) for label, ball, _ in self.scaling_balls()]

    @staticmethod
    def _symbol_of(x: PadicNumber, partition: Sequence[Tuple[str, Ball]]) -> Optional[str]:
        for label, ball in partition:
            if ball.contains(x):
                return label
        return None

    def basin_decide(self, x: PadicNumber, max_iter: int, partition: Sequence[Tuple[str, Ball]] = None):
        partition = self.default_partition() if partition is None else partition
        try:
            symbol = self._symbol_of(x, partition)
        except PrecisionExhausted:
            symbol = None
        inside = symbol is not None
        z = x
        for step in range(max_iter + 1):
            try:
                tag = self.classify_region(z).tag
            except PrecisionExhausted:
                return InJuliaPartition(symbol, step) if inside else Undecided(step)
            if tag == SINGULAR:
                return HitsSingular(step)
            if tag == A0:
                return Converges(step)
            if inside:
                try:
                    inside = self._symbol_of(z, partition) is not None
                except PrecisionExhausted:
                    return InJuliaPartition(symbol, step)
            if step == max_iter:
                break
            try:
                z = self.eval_map(z)
            except PrecisionExhausted:
                return InJuliaPartition(symbol, step) if inside else Undecided(step)
        return InJuliaPartition(symbol, max_iter) if inside else Undecided(max_iter)

    def escape_time(self, x: PadicNumber, max_iter: int) -> Optional[int]:
        """ First n with f^n(x) outside A1_INF_2, for the p = 2, 3 dichotomies """
        if self.prime_regime not in (REGIME_TWO, REGIME_THREE):
            raise OutOfRegime('Escape from A1_INF_2 is only defined for p = 2, 3')
        z = x
        for n in range(max_iter + 1):
            if self.classify_region(z).tag != A1_INF_2:
                return n
            z = self.eval_map(z)
        return None

    # --------------------------------------------------------------------------
    #            Reporting
    # --------------------------------------------------------------------------

    def regime_description(self) -> str:
        if self.prime_regime != REGIME_ONE_MOD_THREE:
            return self.prime_regime
        return self.prime_regime + (', full shift' if self.m_level == 0 else ', A_m with m=%d' % self.m_level)

    def inequality_chain(self) -> str:
        p = self.prime
        t = '|θ-1| = ' + norm_str(p, -self.vt)
        q = '|q| = ' + norm_str(p, -self.vq)
        q2 = '|q|^2 = ' + norm_str(p, -2 * self.vq)
        if self.vt > 2 * self.vq:
            return '0 < %s < %s < %s < 1' % (t, q2, q)
        if self.vt == 2 * self.vq:
            return '0 < %s = %s < %s < 1' % (t, q2, q)
        return '0 < %s < %s < %s < 1' % (q2, t, q)


# Operation names as used by callers that prefer functions over methods

def eval_map(m: PottsBetheMap, x: PadicNumber) -> PadicNumber:
    return m.eval_map(x)


def derivative_multiplier(m: PottsBetheMap, x: PadicNumber) -> PadicNumber:
    return m.derivative_multiplier(x)


def fixed_points(m: PottsBetheMap) -> List[FixedPointInfo]:
    return m.fixed_points()


def classify_region(m: PottsBetheMap, x: PadicNumber) -> Region:
    return m.classify_region(x)


def basin_decide(m: PottsBetheMap, x: PadicNumber, max_iter: int, partition=None):
    return m.basin_decide(x, max_iter, partition)


def local_scaling_factor(m: PottsBetheMap, b: Ball) -> Fraction:
    return m.local_scaling_factor(b)


def ball_image(m: PottsBetheMap, b: Ball) -> Ball:
    return m.ball_image(b)
