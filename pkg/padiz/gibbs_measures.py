import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from scipy.special import comb

from padiz.conventions import PLUS_INFINITY, default_precision
from padiz.errors import (DegenerateForm, InadmissibleAlpha, Infeasible, NotACycle, OutOfDomain, OutOfRegime,
                          PartitionFunctionZero, PrecisionExhausted)
from padiz.padic_core import (PadicNumber, coerce, difference_ord, int_ord, one, residual_ord, translate, zero)
from padiz.padic_functions import ep_membership, exp_domain_min_ord, exp_p, ln_p
from padiz.padic_poly import Polynomial, polynomial_roots

Word = Tuple[int, ...]
ZVector = Tuple[PadicNumber, ...]

FORMS = ('A', 'B', 'C', 'D', 'E')


# --------------------------------------------------------------------------
#            The Cayley tree and its configurations
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class CayleyTree:
    """ Semi-infinite tree of order k truncated at depth n; vertices are coordinate words, root = () """
    k: int = 3
    depth: int = 1

    def level(self, m: int) -> List[Word]:
        return list(itertools.product(range(1, self.k + 1), repeat=m))

    def vertices(self) -> List[Word]:
        return [x for m in range(self.depth + 1) for x in self.level(m)]

    def successors(self, x: Word) -> List[Word]:
        return [x + (i,) for i in range(1, self.k + 1)]

    def edges(self) -> List[Tuple[Word, Word]]:
        return [(x, y) for m in range(self.depth) for x in self.level(m) for y in self.successors(x)]

    @property
    def size(self) -> int:
        return sum(self.k ** m for m in range(self.depth + 1))

    def truncated(self) -> 'CayleyTree':
        return CayleyTree(self.k, self.depth - 1)


@dataclass(frozen=True)
class Configuration:
    """ Spins in 1..q on the vertices of a tree, listed in tree.vertices() order """
    tree: CayleyTree
    spins: Tuple[int, ...]

    def assignment(self) -> Dict[Word, int]:
        return dict(zip(self.tree.vertices(), self.spins))

    def restricted(self) -> 'Configuration':
        smaller = self.tree.truncated()
        return Configuration(smaller, self.spins[:smaller.size])

    @classmethod
    def concatenate(cls, previous: 'Configuration', boundary: Sequence[int]) -> 'Configuration':
        """ σ_(n-1) ∨ σ^(n) """
        tree = CayleyTree(previous.tree.k, previous.tree.depth + 1)
        if len(boundary) != tree.k ** tree.depth:
            raise ValueError('Boundary configuration has the wrong size')
        return cls(tree, tuple(previous.spins) + tuple(boundary))

    @classmethod
    def constant(cls, tree: CayleyTree, spin: int) -> 'Configuration':
        return cls(tree, (spin,) * tree.size)


@dataclass(frozen=True)
class BoundaryFunction:
    """ Per-level vectors h^(j) in Q_p^(q-1), j = 0..m-1; h~ appends the normalized last spin h~_q = 0 """
    vectors: Tuple[ZVector, ...]
    prime: int

    @property
    def period(self) -> int:
        return len(self.vectors)

    @property
    def q_states(self) -> int:
        return len(self.vectors[0]) + 1

    def h_tilde(self, level: int) -> ZVector:
        return tuple(self.vectors[level % self.period]) + (zero(self.prime),)

    def z_vectors(self) -> List[ZVector]:
        return [tuple(exp_p(h) for h in vector) for vector in self.vectors]

    def precision(self) -> float:
        known = [h.absolute_precision if h.is_zero else h.precision for vector in self.vectors for h in vector]
        return min(known, default=PLUS_INFINITY)

    @classmethod
    def from_z(cls, z_vectors: Sequence[ZVector]) -> 'BoundaryFunction':
        prime = z_vectors[0][0].prime
        return cls(tuple(tuple(ln_p(z) for z in vector) for vector in z_vectors), prime)

    @classmethod
    def translation_invariant(cls, z: ZVector) -> 'BoundaryFunction':
        return cls.from_z([z])


@dataclass(frozen=True)
class MeasureValue:
    value: PadicNumber


@dataclass(frozen=True)
class CompatibilityReport:
    n: int
    residuals: Dict[str, float] = field(compare=False)
    min_residual: float
    threshold: float
    passed: bool


def _check_coupling(J: PadicNumber):
    if not J.is_zero and J.valuation < exp_domain_min_ord(J.prime):
        raise OutOfDomain('|J|_p must be below p^(-1/(p-1))')


def q_scalar(q_states: int, prime: int, precision: int = None) -> PadicNumber:
    """ q as an element of Q_p, which must have |q|_p < 1 """
    if q_states < 2 or q_states % prime:
        raise OutOfRegime('q = %d must be divisible by p = %d' % (q_states, prime))
    return coerce(q_states, prime, precision)


# --------------------------------------------------------------------------
#            Finite-volume measures
# --------------------------------------------------------------------------

def hamiltonian(tree: CayleyTree, sigma: Configuration, J: PadicNumber) -> PadicNumber:
    """ J times the number of monochromatic edges """
    _check_coupling(J)
    spins = sigma.assignment()
    count = sum(1 for x, y in tree.edges() if spins[x] == spins[y])
    return J * count


def _weight(tree: CayleyTree, sigma: Configuration, h: BoundaryFunction, J: PadicNumber) -> PadicNumber:
    exponent = hamiltonian(tree, sigma, J)
    h_tilde = h.h_tilde(tree.depth)
    for spin in sigma.spins[tree.size - tree.k ** tree.depth:]:
        exponent = translate(exponent, h_tilde[spin - 1])
    return exp_p(exponent)


def measure_table(tree: CayleyTree, h: BoundaryFunction, J: PadicNumber,
                  guard: int = 10 ** 8) -> Tuple[Dict[Tuple[int, ...], PadicNumber], PadicNumber]:
    """ All weights exp_p(H_n + sum h~) and the partition function Z^(n), by exhaustive summation """
    q = h.q_states
    if q ** tree.size > guard:
        raise Infeasible('%d^%d configurations exceed the enumeration guard' % (q, tree.size))
    weights = {}
    for spins in itertools.product(range(1, q + 1), repeat=tree.size):
        weights[spins] = _weight(tree, Configuration(tree, spins), h, J)
    return weights, _partition_function(weights, h.prime, tree.depth)


def _partition_function(weights: Dict[Tuple[int, ...], PadicNumber], prime: int, depth: int) -> PadicNumber:
    try:
        return sum(weights.values(), zero(prime))
    except PrecisionExhausted:
        raise PartitionFunctionZero('Z^(%d) vanishes at precision' % depth)


def finite_volume_measure(tree: CayleyTree, sigma: Configuration, h: BoundaryFunction,
                          J: PadicNumber) -> MeasureValue:
    weights, total = measure_table(tree, h, J)
    return MeasureValue(weights[tuple(sigma.spins)] / total)


def measure_values(tree: CayleyTree, h: BoundaryFunction, J: PadicNumber,
                   guard: int = 10 ** 8) -> Dict[Tuple[int, ...], PadicNumber]:
    weights, total = measure_table(tree, h, J, guard)
    return {spins: w / total for spins, w in weights.items()}


def compatibility_feasible(q_states: int, k: int, n: int, guard: int = 10 ** 8) -> bool:
    """ Every parent configuration on V_(n-1) times its q^(k^n) boundary extensions, i.e. q^|V_n| weights """
    return n >= 1 and q_states ** CayleyTree(k, n).size <= guard


def check_compatibility(tree: CayleyTree, h: BoundaryFunction, J: PadicNumber, n: int,
                        precision: int = None, margin: int = 10, guard: int = 10 ** 8) -> CompatibilityReport:
    """ Sum of μ^(n) over boundary spins against μ^(n-1), per configuration on V_(n-1)

        Each parent σ on V_(n-1) is extended by its q^(k^n) boundary configurations; the guard
        bounds the total count q^|V_n|. Residuals are relative: ord(lhs - rhs) - ord(rhs),
        capped by the digits carried.
    """
    if n < 1:
        raise ValueError('n must be positive')
    q = h.q_states
    upper, lower = CayleyTree(tree.k, n), CayleyTree(tree.k, n - 1)
    if not compatibility_feasible(q, tree.k, n, guard):
        raise Infeasible('Compatibility at n = %d needs %d^%d weights, beyond the guard %d'
                         % (n, q, upper.size, guard))
    spins = range(1, q + 1)
    extended, parents = {}, {}
    for parent in itertools.product(spins, repeat=lower.size):
        sigma = Configuration(lower, parent)
        parents[parent] = _weight(lower, sigma, h, J)
        extensions = [_weight(upper, Configuration.concatenate(sigma, omega), h, J)
                      for omega in itertools.product(spins, repeat=tree.k ** n)]
        extended[parent] = sum(extensions[1:], extensions[0])
    upper_total = _partition_function(extended, h.prime, n)
    lower_total = _partition_function(parents, h.prime, n - 1)
    residuals = {}
    for parent, weight in parents.items():
        rhs = weight / lower_total
        o, _ = residual_ord([extended[parent] / upper_total, -rhs])
        residuals[''.join(map(str, parent))] = o - rhs.valuation
    carried = [int(precision or default_precision()), h.precision()]
    if not J.is_zero:
        carried.append(J.precision)
    threshold = min(carried) - margin
    smallest = min(residuals.values())
    return CompatibilityReport(n=n, residuals=residuals, min_residual=smallest, threshold=threshold,
                               passed=smallest >= threshold)


# --------------------------------------------------------------------------
#            Tree recursion and translation-invariant solutions
# --------------------------------------------------------------------------

def _ratio(theta: PadicNumber, z_i: PadicNumber, total: PadicNumber) -> PadicNumber:
    """ ((θ-1) z_i + Σz + 1) / (θ + Σz) """
    return ((theta - 1) * z_i + total + 1) / (theta + total)


def tree_recursion_F(h: Sequence[PadicNumber], theta: PadicNumber, q_states: int) -> ZVector:
    if len(h) != q_states - 1:
        raise ValueError('h needs q - 1 components')
    z = [exp_p(x) for x in h]
    total = sum(z[1:], z[0])
    return tuple(ln_p(_ratio(theta, z_i, total)) for z_i in z)


def ti_system_image(z: ZVector, theta: PadicNumber, k: int = 3) -> ZVector:
    """ Right-hand side of z_i = (((θ-1) z_i + Σz + 1)/(θ + Σz))^k """
    total = sum(z[1:], z[0])
    return tuple(_ratio(theta, z_i, total) ** k for z_i in z)


def ti_residual_ord(z: ZVector, theta: PadicNumber, source: ZVector = None) -> Tuple[float, bool]:
    """ min over i of ord(image_i - z_i), and whether every component agrees to the digits it carries """
    image = ti_system_image(source if source is not None else z, theta)
    worst, all_inexact = PLUS_INFINITY, True
    for a, b in zip(image, z):
        o, exact = difference_ord(a, b)
        worst = min(worst, o)
        all_inexact = all_inexact and not exact
    return worst, all_inexact


def partition_count(z: ZVector) -> int:
    """ Number of distinct entries, to precision """
    distinct: List[PadicNumber] = []
    for x in z:
        if not any(x == y for y in distinct):
            distinct.append(x)
    return len(distinct)


def _vanishes(terms: Sequence[PadicNumber]) -> bool:
    return not residual_ord(terms)[1]


def _cube_of_linear(a: PadicNumber, b: PadicNumber) -> List[PadicNumber]:
    """ Coefficients of (a z + b)^3, constant first """
    return [b ** 3, 3 * a * b * b, 3 * a * a * b, a ** 3]


def _add_coefficients(*lists: Sequence[PadicNumber]) -> Tuple[PadicNumber, ...]:
    size = max(len(c) for c in lists)
    out = []
    for i in range(size):
        acc = None
        for c in lists:
            if i < len(c):
                acc = c[i] if acc is None else translate(acc, c[i])
        out.append(acc)
    return tuple(out)


def _in_ep_not_one(z: PadicNumber) -> bool:
    try:
        return ep_membership(z) and difference_ord(z, one(z.prime, z.precision))[1]
    except PrecisionExhausted:
        return False


def _form_candidates(form: str, q_states: int, theta: PadicNumber, sizes: Sequence[int]) -> List[ZVector]:
    p = theta.prime
    N = theta.precision

    def scalar(n) -> PadicNumber:
        return coerce(n, p, N) if n != 0 else zero(p)

    t = theta - 1
    ones = one(p, N)
    if form == 'B':
        b = scalar(q_states - 1)
        cubic = Polynomial((ones, 3 * b - t * t * (theta + 2), 3 * b * b - t * t * (t + 3 * b), b ** 3))
        return [(z,) * (q_states - 1) for z in polynomial_roots(cubic)]
    if form == 'C':
        m1, m2 = sizes
        a, b = scalar(m1 + 1), scalar(m2)
        cubic = Polynomial((a ** 3, 3 * b * a * a - t * t * (t + 3 * a), 3 * a * b * b - t * t * (t + 3 * b), b ** 3))
        return [(ones,) * m1 + (z,) * m2 for z in polynomial_roots(cubic)]
    if form == 'D':
        m1, m2 = sizes
        return _form_d(theta, scalar, m1, m2)
    if form == 'E':
        m1, m2, m3 = sizes
        if _vanishes([theta, -ones, scalar(q_states)]):
            raise OutOfRegime('θ = 1 - q makes the Potts-Bethe map constant')
        return _form_e(theta, scalar, m1, m2, m3)
    raise ValueError('Unknown form ' + str(form))


def _form_d(theta: PadicNumber, scalar, m1: int, m2: int) -> List[ZVector]:
    t = theta - 1
    vectors = []
    cases = [(m1, m2, False), (m2, m1, True)]
    usable = [c for c in cases if not _vanishes([t, scalar(3 * c[0])])]
    if not usable:
        raise DegenerateForm('θ - 1 + 3 m_i vanishes for both cases')
    for first, second, swapped in usable:
        k1 = t + scalar(3 * first)
        k2 = t + scalar(3 * second)
        bracket = _cube_of_linear(scalar(first - second), scalar(first - 1))
        cubic = Polynomial(_add_coefficients(bracket, [zero(theta.prime), k1 * k1 * (theta + 2), k1 * k1 * k2]))
        for z2 in polynomial_roots(cubic):
            z1 = -(k2 * z2 + theta + 2) / k1
            pair = (z2, z1) if swapped else (z1, z2)
            vectors.append((pair[0],) * m1 + (pair[1],) * m2)
    return vectors


def _form_e(theta: PadicNumber, scalar, m1: int, m2: int, m3: int) -> List[ZVector]:
    t = theta - 1
    p = theta.prime
    vectors = []
    cases = [(m1, m2, False), (m2, m1, True)]
    usable = [c for c in cases if not _vanishes([t, scalar(3 * c[0])])]
    if not usable:
        raise DegenerateForm('θ - 1 + 3 m_i vanishes for both cases')
    for first, second, swapped in usable:
        k1 = t + scalar(3 * first)
        k2 = t + scalar(3 * second)
        bracket = _cube_of_linear(scalar(first - second), scalar(first - m3 - 1))
        linear = k1 * k1 * (scalar(3 * m3) + theta + 2)
        cubic = Polynomial(_add_coefficients(bracket, [zero(p), linear, k1 * k1 * k2]))
        for z2 in polynomial_roots(cubic):
            if z2.is_zero:
                continue
            z1 = -(k2 * z2 + scalar(3 * m3) + theta + 2) / k1
            pair = (z2, z1) if swapped else (z1, z2)
            vectors.append((pair[0],) * m1 + (pair[1],) * m2 + (one(p, theta.precision),) * m3)
    return vectors


def _check_sizes(form: str, q_states: int, sizes: Sequence[int]):
    expected = {'C': 2, 'D': 2, 'E': 3}.get(form, 0)
    if len(sizes) != expected:
        raise ValueError('Form %s takes %d partition sizes' % (form, expected))
    if expected and (sum(sizes) != q_states - 1 or min(sizes) < (0 if form == 'E' else 1)):
        raise ValueError('Partition sizes must be positive and sum to q - 1')


def ti_solve(form: str, q_states: int, theta: PadicNumber, sizes: Sequence[int] = ()) -> List[ZVector]:
    """ Translation-invariant boundary vectors z in E_p^(q-1) of the given form, each verified against the system """
    form = form.upper()
    if form not in FORMS:
        raise ValueError('Form must be one of ' + ', '.join(FORMS))
    _check_sizes(form, q_states, sizes)
    q_scalar(q_states, theta.prime)
    if form == 'A':
        return [(one(theta.prime, theta.precision),) * (q_states - 1)]
    solutions = []
    for z in _form_candidates(form, q_states, theta, sizes):
        if not all(ep_membership_safe(x) for x in z) or not any(_in_ep_not_one(x) for x in z):
            continue
        _, verified = ti_residual_ord(z, theta)
        if verified:
            assert partition_count(z) <= 3, 'A translation-invariant solution has at most k distinct entries'
            solutions.append(z)
    return solutions


def ep_membership_safe(x: PadicNumber) -> bool:
    try:
        return ep_membership(x)
    except PrecisionExhausted:
        return False


# --------------------------------------------------------------------------
#            Periodic measures from cycles of the Potts-Bethe map
# --------------------------------------------------------------------------

def excluded_alpha_sizes(q_states: int, prime: int) -> List[int]:
    """ i/|q|_p for i = 1..q*-1 """
    vq = int_ord(q_states, prime)
    q_star = q_states // prime ** vq
    return [i * prime ** vq for i in range(1, q_star)]


def cycle_to_measure(cycle: Sequence[PadicNumber], alpha_size: int, q_states: int,
                     theta: PadicNumber) -> BoundaryFunction:
    """ Boundary function of an H_m-periodic measure from an m-cycle x, G(x), ... of G_{θ,α,q,3}

          z^(j) = x_{(m-j) mod m} e_α + e_β, so that z^(j) = G(z^(j+1)).
    """
    p = theta.prime
    q_scalar(q_states, p)
    if not 1 <= alpha_size <= q_states - 1 or alpha_size in excluded_alpha_sizes(q_states, p):
        raise InadmissibleAlpha('|α| = %d is excluded for q = %d, p = %d' % (alpha_size, q_states, p))
    m = len(cycle)
    if m == 0:
        raise NotACycle(0, 'Empty cycle')
    ones = one(p, theta.precision)
    vectors = []
    for j in range(m):
        x = cycle[(m - j) % m]
        vectors.append((x,) * alpha_size + (ones,) * (q_states - 1 - alpha_size))
    for j in range(m):
        _, verified = ti_residual_ord(vectors[j], theta, source=vectors[(j + 1) % m])
        if not verified:
            raise NotACycle(j)
    return BoundaryFunction.from_z(vectors)


def hgm_lower_bound(m: int, q_states: int, prime: int) -> int:
    """ (2^(q-1) - sum_i C(q-1, i/|q|_p)) 3^m """
    if q_states % prime:
        raise OutOfRegime('|q|_p must be below 1')
    excluded = sum(int(comb(q_states - 1, a, exact=True)) for a in excluded_alpha_sizes(q_states, prime))
    return (2 ** (q_states - 1) - excluded) * 3 ** m


def boundary_function_from_z(z_vectors: Sequence[ZVector]) -> BoundaryFunction:
    """ h^(j) = ln_p z^(j), componentwise """
    return BoundaryFunction.from_z(z_vectors)
