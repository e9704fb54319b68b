import math
from fractions import Fraction

from padiz.errors import OutOfDomain, PrecisionExhausted
from padiz.padic_core import PadicNumber, difference_ord, one, zero_to

# --------------------------------------------------------------------------
#            exp_p, ln_p and the group E_p
# --------------------------------------------------------------------------
# Truncation is provable: the tail of each series is bounded below in valuation
# and summation stops as soon as that bound reaches the target absolute precision.


def exp_domain_min_ord(prime: int) -> int:
    """ Smallest ord(x) with |x|_p < p^(-1/(p-1)) """
    return 2 if prime == 2 else 1


def exp_p(x: PadicNumber) -> PadicNumber:
    """ sum x^k / k!  for |x|_p < p^(-1/(p-1)) """
    p = x.prime
    if x.is_exact_zero:
        return one(p)
    if x.is_zero:
        if x.bound < exp_domain_min_ord(p):
            raise PrecisionExhausted('exp_p of O(%d^%d) is undecidable' % (p, x.bound))
        return one(p, x.bound)
    v = x.valuation
    if v < exp_domain_min_ord(p):
        raise OutOfDomain('exp_p needs ord(x) >= %d, got %d' % (exp_domain_min_ord(p), v))
    target = x.absolute_precision
    total = one(p, target)
    term = one(p, target)
    k = 1
    # ord(x^k/k!) >= k*v - (k-1)/(p-1), increasing in k
    while k * v - Fraction(k - 1, p - 1) < target:
        term = term * x / k
        total = total + term
        k += 1
    return total.with_precision(target)


def ln_p(x: PadicNumber) -> PadicNumber:
    """ sum (-1)^(k+1) (x-1)^k / k  for |x - 1|_p < 1 """
    p = x.prime
    if x.is_zero:
        raise OutOfDomain('ln_p(0)')
    o, exact = difference_ord(x, one(p, x.precision))
    if not exact:
        return zero_to(p, o)
    if o < 1:
        raise OutOfDomain('ln_p needs |x - 1|_p < 1')
    y = x - 1
    v = y.valuation
    target = y.absolute_precision
    total = y
    power = y
    k = 2
    # ord(y^k/k) >= k*v - log_p(k), increasing in k from k = 2
    while k * v - math.log(k, p) < target:
        power = power * y
        term = power / k if k % 2 else -(power / k)
        total = total + term
        k += 1
    return total


def ep_membership(x: PadicNumber) -> bool:
    """ True iff |x - 1|_p < p^(-1/(p-1)) """
    p = x.prime
    if x.is_zero:
        return False
    o, exact = difference_ord(x, one(p, x.precision))
    if o >= exp_domain_min_ord(p):
        return True
    if exact:
        return False
    raise PrecisionExhausted('Cannot decide E_p membership at precision')
