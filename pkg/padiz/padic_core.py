import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Tuple, Union

from padiz.conventions import PLUS_INFINITY, Valuation, default_precision
from padiz.errors import NotPrime, PrecisionExhausted, DivisionByZero

Rational = Union[int, Fraction]


# --------------------------------------------------------------------------
#            Integer helpers
# --------------------------------------------------------------------------

@functools.lru_cache(maxsize=1024)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def require_prime(prime) -> int:
    if isinstance(prime, bool) or not isinstance(prime, int) or not is_prime(prime):
        raise NotPrime(str(prime) + ' is not a prime')
    return prime


def int_ord(n: int, prime: int) -> Valuation:
    """ p-adic valuation of an integer, PLUS_INFINITY for 0 """
    if n == 0:
        return PLUS_INFINITY
    v = 0
    while n % prime == 0:
        n //= prime
        v += 1
    return v


def split_unit(n: int, prime: int) -> Tuple[int, int]:
    """ n = p^v * u with p not dividing u, n != 0 """
    v = 0
    while n % prime == 0:
        n //= prime
        v += 1
    return v, n


def rational_ord(r: Rational, prime: int) -> Valuation:
    r = Fraction(r)
    if r == 0:
        return PLUS_INFINITY
    return int_ord(r.numerator, prime) - int_ord(r.denominator, prime)


# --------------------------------------------------------------------------
#            Elements of Q_p at finite precision
# --------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PadicNumber:
    """ x = p^valuation * unit + O(p^(valuation+precision))

          prime       int     p
          valuation   int     ord_p(x), PLUS_INFINITY for the exact zero
          unit        int     0 <= unit < p^precision, not divisible by p
          precision   int     relative precision N (number of known unit digits)
          bound       int     for zeros only: known to vanish modulo p^bound, PLUS_INFINITY when exact
    """
    prime: int
    valuation: Valuation
    unit: int
    precision: int
    bound: Valuation = PLUS_INFINITY

    @property
    def is_zero(self) -> bool:
        return self.valuation == PLUS_INFINITY

    @property
    def is_exact_zero(self) -> bool:
        return self.is_zero and self.bound == PLUS_INFINITY

    @property
    def absolute_precision(self) -> Valuation:
        return self.bound if self.is_zero else self.valuation + self.precision

    @property
    def norm(self) -> Fraction:
        return Fraction(0) if self.is_zero else Fraction(self.prime) ** (-self.valuation)

    @property
    def is_integral(self) -> bool:
        return self.valuation >= 0

    @property
    def is_unit(self) -> bool:
        return self.valuation == 0

    def digits(self) -> List[int]:
        """ Base-p digits of the unit part, least significant first """
        out, u = [], self.unit
        for _ in range(self.precision if not self.is_zero else 0):
            u, d = divmod(u, self.prime)
            out.append(d)
        return out

    def leading_digit(self) -> int:
        return self.unit % self.prime

    def residue(self, absolute_precision: int) -> int:
        """ Integer r with x = r mod p^absolute_precision """
        if absolute_precision > self.absolute_precision:
            raise PrecisionExhausted('Residue mod p^' + str(absolute_precision) + ' of ' + repr(self))
        if self.is_zero:
            return 0
        if self.valuation < 0:
            raise ValueError('Residue of a non-integral element ' + repr(self))
        modulus = self.prime ** absolute_precision
        return (self.unit * self.prime ** self.valuation) % modulus

    def shift(self, k: int) -> 'PadicNumber':
        """ Multiply by p^k exactly """
        if self.is_zero:
            return self
        return PadicNumber(self.prime, self.valuation + k, self.unit, self.precision)

    def with_precision(self, precision: int) -> 'PadicNumber':
        if self.is_zero:
            return self
        precision = max(1, min(precision, self.precision))
        return PadicNumber(self.prime, self.valuation, self.unit % self.prime ** precision, precision)

    def key(self, absolute_precision: int) -> Tuple:
        """ Hashable key identifying x modulo p^absolute_precision """
        if absolute_precision > self.absolute_precision:
            raise PrecisionExhausted('Key beyond known digits of ' + repr(self))
        if self.is_zero or self.valuation >= absolute_precision:
            return (PLUS_INFINITY, 0)
        relative = absolute_precision - self.valuation
        return (self.valuation, self.unit % self.prime ** relative)

    # Arithmetic

    def _coerce(self, other):
        if isinstance(other, PadicNumber):
            if other.prime != self.prime:
                raise ValueError('Mixed primes ' + str(self.prime) + ' and ' + str(other.prime))
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = Fraction(other)
            if other == 0:
                return zero(self.prime)
            v = rational_ord(other, self.prime)
            target = default_precision() if self.is_zero else self.absolute_precision
            precision = max(1, 0 if self.is_zero else self.precision, int(target - v))
            return from_rational(other.numerator, other.denominator, self.prime, precision)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _add(self, other)

    __radd__ = __add__

    def __neg__(self):
        if self.is_zero:
            return self
        modulus = self.prime ** self.precision
        return PadicNumber(self.prime, self.valuation, (-self.unit) % modulus, self.precision)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _add(other, -self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_exact_zero or other.is_exact_zero:
            return zero(self.prime)
        if self.is_zero or other.is_zero:
            vanishing, factor = (self, other) if self.is_zero else (other, self)
            scale = factor.bound if factor.is_zero else factor.valuation
            return zero_to(self.prime, vanishing.bound + scale)
        precision = min(self.precision, other.precision)
        unit = (self.unit * other.unit) % self.prime ** precision
        return PadicNumber(self.prime, self.valuation + other.valuation, unit, precision)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _divide(self, other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return _divide(other, self)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return _divide(one(self.prime, self.precision), self ** (-n))
        result, base = one(self.prime, max(1, self.precision)), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        """ Equality to the precision both sides know """
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        o, exact = difference_ord(self, other)
        return o == PLUS_INFINITY or not exact

    __hash__ = None

    def __str__(self):
        return render(self)

    def __repr__(self):
        if self.is_exact_zero:
            return 'PadicNumber(0)'
        if self.is_zero:
            return 'PadicNumber(O(%d^%d))' % (self.prime, self.bound)
        return 'PadicNumber(%d^%d*%d + O(%d^%d))' % (self.prime, self.valuation, self.unit,
                                                   self.prime, self.absolute_precision)


def _add(x: PadicNumber, y: PadicNumber) -> PadicNumber:
    if x.is_zero:
        return capped(y, x.bound)
    if y.is_zero:
        return capped(x, y.bound)
    p = x.prime
    e = min(x.valuation, y.valuation)
    top = min(x.absolute_precision, y.absolute_precision)
    s = (x.unit * p ** (x.valuation - e) + y.unit * p ** (y.valuation - e)) % p ** (top - e)
    if s == 0:
        raise PrecisionExhausted('All %d known digits cancel in a sum' % (top - e))
    v, u = split_unit(s, p)
    return PadicNumber(p, e + v, u, top - e - v)


def _divide(x: PadicNumber, y: PadicNumber) -> PadicNumber:
    if y.is_zero:
        raise DivisionByZero('Division by zero')
    if x.is_zero:
        return x if x.is_exact_zero else zero_to(x.prime, x.bound - y.valuation)
    precision = min(x.precision, y.precision)
    modulus = x.prime ** precision
    unit = (x.unit * pow(y.unit, -1, modulus)) % modulus
    return PadicNumber(x.prime, x.valuation - y.valuation, unit, precision)


# --------------------------------------------------------------------------
#            Construction
# --------------------------------------------------------------------------

def zero(prime: int) -> PadicNumber:
    return PadicNumber(prime, PLUS_INFINITY, 0, 0)


def zero_to(prime: int, absolute_precision: Valuation) -> PadicNumber:
    """ O(p^absolute_precision): an element known only to vanish modulo p^absolute_precision """
    return PadicNumber(prime, PLUS_INFINITY, 0, 0, absolute_precision)


def capped(x: PadicNumber, absolute_precision: Valuation) -> PadicNumber:
    """ x + O(p^absolute_precision) """
    if absolute_precision >= x.absolute_precision:
        return x
    if x.is_zero or x.valuation >= absolute_precision:
        return zero_to(x.prime, absolute_precision)
    return x.with_precision(absolute_precision - x.valuation)


def one(prime: int, precision: int = None) -> PadicNumber:
    return PadicNumber(prime, 0, 1, int(precision or default_precision()))


def from_rational(numerator: int, denominator: int, prime: int, precision: int = None) -> PadicNumber:
    """ Embed numerator/denominator into Q_p with relative precision N """
    require_prime(prime)
    if denominator == 0:
        raise DivisionByZero('Zero denominator')
    precision = int(precision or default_precision())
    if precision < 1:
        raise ValueError('Precision must be positive')
    r = Fraction(numerator, denominator)
    if r == 0:
        return zero(prime)
    vn, un = split_unit(r.numerator, prime)
    vd, ud = split_unit(r.denominator, prime)
    modulus = prime ** precision
    return PadicNumber(prime, vn - vd, (un * pow(ud, -1, modulus)) % modulus, precision)


def from_residue(residue: int, prime: int, absolute_precision: int) -> PadicNumber:
    """ The element of Z_p known modulo p^absolute_precision """
    r = residue % prime ** absolute_precision
    if r == 0:
        raise PrecisionExhausted('Residue vanishes modulo p^' + str(absolute_precision))
    v, u = split_unit(r, prime)
    return PadicNumber(prime, v, u, absolute_precision - v)


def coerce(value, prime: int, precision: int = None) -> PadicNumber:
    if isinstance(value, PadicNumber):
        return value
    value = Fraction(value)
    return from_rational(value.numerator, value.denominator, prime, precision)


# --------------------------------------------------------------------------
#            Valuations, norms, residuals
# --------------------------------------------------------------------------

def norm_and_ord(x: PadicNumber) -> Tuple[Fraction, Valuation]:
    return x.norm, x.valuation


def residual_ord(terms: Iterable[PadicNumber]) -> Tuple[Valuation, bool]:
    """ Valuation of a sum, or (absolute precision, False) when it vanishes to precision """
    terms = list(terms)
    top = min((t.absolute_precision for t in terms), default=PLUS_INFINITY)
    terms = [t for t in terms if not t.is_zero]
    if not terms:
        return (PLUS_INFINITY, True) if top == PLUS_INFINITY else (top, False)
    p = terms[0].prime
    e = min(t.valuation for t in terms)
    if e >= top:
        return top, False
    s = sum(t.unit * p ** (t.valuation - e) for t in terms) % p ** (top - e)
    if s == 0:
        return top, False
    return e + int_ord(s, p), True


def difference_ord(x: PadicNumber, y: PadicNumber) -> Tuple[Valuation, bool]:
    return residual_ord([x, -y])


def agreement(x: PadicNumber, y: PadicNumber) -> Valuation:
    """ min(ord(x - y), precision cap) """
    return difference_ord(x, y)[0]


def translate(x: PadicNumber, offset: PadicNumber) -> PadicNumber:
    """ x + offset, or O(p^a) when the sum vanishes to the precision a both carry """
    try:
        return x + offset
    except PrecisionExhausted:
        return zero_to(x.prime, min(x.absolute_precision, offset.absolute_precision))


def render(x: PadicNumber) -> str:
    if x.is_exact_zero:
        return '0'
    if x.is_zero:
        return 'O(%d^%d)' % (x.prime, x.bound)
    p = x.prime
    terms = []
    for i, d in enumerate(x.digits()):
        terms.append(str(d) if i == 0 else ('%d*%d' % (d, p) if i == 1 else '%d*%d^%d' % (d, p, i)))
    return '%d^%d * (%s) + O(%d^%d)' % (p, x.valuation, ' + '.join(terms), p, x.absolute_precision)


def norm_str(prime: int, exponent) -> str:
    """ p^e written the way reports print norms """
    return str(prime) + '^' + str(exponent)


# --------------------------------------------------------------------------
#            Balls and spheres
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Ball:
    """ Closed ball { x : |x - center| <= p^closed_radius_exp } """
    center: PadicNumber
    closed_radius_exp: int

    @classmethod
    def open(cls, center: PadicNumber, radius_exp: int) -> 'Ball':
        """ { x : |x - center| < p^radius_exp } is the closed ball of exponent radius_exp - 1 """
        return cls(center, radius_exp - 1)

    @property
    def prime(self) -> int:
        return self.center.prime

    @property
    def radius(self) -> Fraction:
        return Fraction(self.prime) ** self.closed_radius_exp

    @property
    def min_ord(self) -> int:
        """ Members are the x with ord(x - center) >= min_ord """
        return -self.closed_radius_exp

    def contains(self, x: PadicNumber) -> bool:
        o, exact = difference_ord(x, self.center)
        if o >= self.min_ord:
            return True
        if exact:
            return False
        raise PrecisionExhausted('Membership in ' + str(self) + ' is undecidable at precision')

    def is_subset_of(self, other: 'Ball') -> bool:
        return self.closed_radius_exp <= other.closed_radius_exp and other.contains(self.center)

    def decompose(self, target_exp: int) -> List['Ball']:
        return ball_decompose(self, target_exp)

    def __str__(self):
        return 'B(' + repr(self.center) + ', ' + norm_str(self.prime, self.closed_radius_exp) + ')'


@dataclass(frozen=True)
class Sphere:
    """ { x : |x - center| = p^radius_exp } """
    center: PadicNumber
    radius_exp: int

    def contains(self, x: PadicNumber) -> bool:
        o, exact = difference_ord(x, self.center)
        if exact:
            return o == -self.radius_exp
        if o > -self.radius_exp:
            return False
        raise PrecisionExhausted('Sphere membership is undecidable at precision')


def ball_decompose(ball: Ball, target_exp: int) -> List[Ball]:
    """ Partition a closed ball into the p^(gap) closed balls of exponent target_exp """
    gap = ball.closed_radius_exp - target_exp
    if gap < 0:
        raise ValueError('Target radius exceeds the ball radius')
    p = ball.prime
    step = Fraction(p) ** ball.min_ord
    center = ball.center
    precision = (center.precision if not center.is_zero else default_precision()) + gap
    balls = []
    for j in range(p ** gap):
        offset = step * j
        shifted = center if j == 0 else translate(center, from_rational(offset.numerator, offset.denominator,
                                                                         p, precision))
        balls.append(Ball(shifted, target_exp))
    return balls
