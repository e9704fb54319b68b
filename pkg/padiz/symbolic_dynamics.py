import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components
from sortedcontainers import SortedSet

from padiz.errors import (BadBlockLength, EqualToHorizon, EscapesPartition, InadmissibleWord, NotScalingDomain,
                          OutOfRegime, PrecisionExhausted)
from padiz.padic_core import Ball, PadicNumber, Sphere, difference_ord, from_rational, one, zero
from padiz.padic_poly import REGIME_ONE_MOD_THREE, Polynomial, hensel_lift
from padiz.potts_bethe import C1, C2, C3, Converges, PottsBetheMap

D1 = 'D1'

# --------------------------------------------------------------------------
#            Types
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class IncidenceMatrix:
    """ entries[i][j] = 1 iff ball j lies inside the image of ball i """
    entries: np.ndarray
    labels: Tuple[str, ...]

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    def allows(self, i: int, j: int) -> bool:
        return bool(self.entries[i, j])

    def is_irreducible(self) -> bool:
        n_components, _ = connected_components(csr_matrix(self.entries), directed=True, connection='strong')
        return n_components == 1

    def to_list(self) -> List[List[int]]:
        return [[int(a) for a in row] for row in self.entries]

    def __eq__(self, other):
        return isinstance(other, IncidenceMatrix) and np.array_equal(self.entries, other.entries)


@dataclass(frozen=True, eq=False)
class MarkovPartition:
    balls: Tuple[Ball, ...]
    labels: Tuple[str, ...]
    tau: Tuple[int, ...]
    kappa: np.ndarray
    m_level: int
    branch_residues: Tuple[int, ...]
    level_counts: Tuple[Tuple[int, int, int], ...] = ()   # (l, candidate balls, qualifying balls)

    @property
    def prime(self) -> int:
        return self.balls[0].prime

    @property
    def size(self) -> int:
        return len(self.balls)

    @property
    def symbols(self) -> range:
        return range(self.size)

    def symbol_of(self, x: PadicNumber) -> Optional[int]:
        for s, ball in enumerate(self.balls):
            if ball.contains(x):
                return s
        return None

    def labelled_balls(self) -> List[Tuple[str, Ball]]:
        return list(zip(self.labels, self.balls))

    def is_weak_repeller(self) -> bool:
        return all(t >= 0 for t in self.tau) and any(t > 0 for t in self.tau)


@dataclass(frozen=True)
class Itinerary:
    symbols: Tuple[int, ...]
    period: Optional[int] = None

    def shifted(self) -> 'Itinerary':
        return Itinerary(self.symbols[1:], self.period)

    def word(self, labels: Sequence[str] = None) -> str:
        if labels is None:
            return ''.join(str(s) for s in self.symbols)
        return ' '.join(labels[s] for s in self.symbols)

    def __len__(self):
        return len(self.symbols)


# --------------------------------------------------------------------------
#            Markov partitions
# --------------------------------------------------------------------------

def _require_chaos_regime(m: PottsBetheMap):
    if m.prime_regime != REGIME_ONE_MOD_THREE or m.k != 3:
        raise OutOfRegime('Markov partitions need p = 1 mod 3 and k = 3')


def _covers_after(m: PottsBetheMap, b: Ball, l: int, targets: Sequence[Ball]) -> bool:
    """ Does f^l(b) contain every target ball, with f^j(b) inside C1 for j < l """
    image = b
    try:
        for _ in range(l):
            image = m.ball_image(image)
    except NotScalingDomain:
        return False
    return all(t.is_subset_of(image) for t in targets)


def _kappa(balls: Sequence[Ball]) -> np.ndarray:
    n = len(balls)
    kappa = np.zeros((n, n), dtype=np.int64)
    for i, j in itertools.combinations(range(n), 2):
        o = int(difference_ord(balls[i].center, balls[j].center)[0])
        kappa[i, j] = kappa[j, i] = o
    return kappa


def build_markov_partition(m: PottsBetheMap) -> MarkovPartition:
    _require_chaos_regime(m)
    x1, x2, x3 = m.fixed_point('x1'), m.fixed_point('x2'), m.fixed_point('x3')
    vt, vr, d, mm = m.vt, m.vr, m.d, m.m_level
    radius = -vr - 1
    c2, c3 = Ball(x2, radius), Ball(x3, radius)
    if mm == 0:
        balls = [Ball(x1, radius), c2, c3]
        labels = [C1, C2, C3]
        tau = [d, vr, vr]
        counts = ()
    else:
        located: Dict[int, Ball] = {}
        counts = []
        for l in range(1, mm + 1):
            level = vt + l * d
            sphere = Sphere(x1, -level)
            candidates = [b for b in Ball(x1, -level).decompose(radius) if sphere.contains(b.center)]
            qualifying = [b for b in candidates if _covers_after(m, b, l, (c2, c3))]
            counts.append((l, len(candidates), len(qualifying)))
            if len(qualifying) != 1:
                raise OutOfRegime('Level %d has %d qualifying balls among %d' % (l, len(qualifying), len(candidates)))
            located[l] = qualifying[0]
        balls = [Ball(x1, radius)] + [located[l] for l in range(mm, 0, -1)] + [c2, c3]
        labels = [D1] + ['H%d' % l for l in range(mm, 0, -1)] + [C2, C3]
        tau = [d] * (mm + 1) + [vr, vr]
        counts = tuple(counts)
    residues = tuple(m.cube_root_argument(b.center).residue(1) for b in balls)
    return MarkovPartition(balls=tuple(balls), labels=tuple(labels), tau=tuple(tau), kappa=_kappa(balls),
                           m_level=mm, branch_residues=residues, level_counts=counts)


def incidence_from_dynamics(part: MarkovPartition, m: PottsBetheMap) -> IncidenceMatrix:
    images = [m.ball_image(b) for b in part.balls]
    entries = np.array([[int(b.is_subset_of(image)) for b in part.balls] for image in images], dtype=np.int64)
    return IncidenceMatrix(entries=entries, labels=part.labels)


def full_shift_matrix() -> IncidenceMatrix:
    return IncidenceMatrix(entries=np.ones((3, 3), dtype=np.int64), labels=(C1, C2, C3))


def a_m_template(mm: int, q_ord: int = None, theta_minus_one_ord: int = None) -> IncidenceMatrix:
    """ Transitions D1 -> {D1, H_m}, H_l -> H_(l-1), H_1 -> {C2, C3}, C2 and C3 -> everything """
    if mm < 1:
        raise ValueError('m must be at least 1')
    if q_ord is not None and theta_minus_one_ord is not None:
        if q_ord // (theta_minus_one_ord - q_ord) != mm:
            raise OutOfRegime('Norms of q and θ-1 do not give m = %d' % mm)
    n = mm + 3
    a = np.zeros((n, n), dtype=np.int64)
    a[0, 0] = a[0, 1] = 1
    for idx in range(1, mm):
        a[idx, idx + 1] = 1
    a[mm, mm + 1] = a[mm, mm + 2] = 1
    a[mm + 1, :] = 1
    a[mm + 2, :] = 1
    labels = (D1,) + tuple('H%d' % l for l in range(mm, 0, -1)) + (C2, C3)
    return IncidenceMatrix(entries=a, labels=labels)


def count_periodic_points(a, n: int) -> int:
    """ trace(A^n) in exact integer arithmetic """
    if n < 1:
        raise ValueError('n must be positive')
    entries = a.entries if isinstance(a, IncidenceMatrix) else np.asarray(a)
    power = np.linalg.matrix_power(entries.astype(object), n)
    return int(sum(power[i, i] for i in range(power.shape[0])))


def is_admissible(word: Sequence[int], a: IncidenceMatrix, cyclic: bool = False) -> bool:
    pairs = list(zip(word[:-1], word[1:]))
    if cyclic and word:
        pairs.append((word[-1], word[0]))
    return all(a.allows(i, j) for i, j in pairs)


# --------------------------------------------------------------------------
#            Itineraries and periodic points
# --------------------------------------------------------------------------

def encode_itinerary(m: PottsBetheMap, part: MarkovPartition, x: PadicNumber, n: int) -> Itinerary:
    symbols = []
    z = x
    for step in range(n):
        s = part.symbol_of(z)
        if s is None:
            raise EscapesPartition(step)
        symbols.append(s)
        if step < n - 1:
            z = m.eval_map(z)
    return Itinerary(tuple(symbols))


def _inverse_branch(m: PottsBetheMap, part: MarkovPartition, symbol: int, y: PadicNumber) -> PadicNumber:
    """ The unique x in ball `symbol` with f(x) = y """
    p = m.prime
    cube = Polynomial((-y, zero(p), zero(p), one(p, m.precision)))
    w = hensel_lift(cube, from_rational(part.branch_residues[symbol], 1, p, 1), 0)
    return m.singular_point + m.c / (w - m.theta)


def periodic_point_from_word(m: PottsBetheMap, part: MarkovPartition, word: Sequence[int],
                             incidence: IncidenceMatrix = None, margin: int = 8) -> PadicNumber:
    """ Fixed point of the composed inverse branches g_w0 o ... o g_w(n-1), verified by iterating f """
    word = tuple(word)
    n = len(word)
    if n == 0 or any(s not in part.symbols for s in word):
        raise InadmissibleWord('Empty word or unknown symbol')
    incidence = incidence or incidence_from_dynamics(part, m)
    if not is_admissible(word, incidence, cyclic=True):
        raise InadmissibleWord('Word ' + ''.join(map(str, word)) + ' is not cyclically admissible')
    lifted = m.lifted(n * max(part.tau) + margin + 4)
    z = part.balls[word[0]].center
    for _ in range(lifted.precision + 2):
        image = z
        for s in reversed(word):
            image = _inverse_branch(lifted, part, s, image)
        _, exact = difference_ord(image, z)
        z = image
        if not exact:
            break
    else:
        raise PrecisionExhausted('Inverse branches did not settle')
    residual = difference_ord(lifted.iterate(z, n), z)[0]
    if residual < m.precision - margin:
        raise PrecisionExhausted('|f^n(x) - x| = p^-%s is too large' % residual)
    return z


def distinct_count(points: Sequence[PadicNumber], absolute_precision: int) -> int:
    return len(SortedSet(x.key(absolute_precision) for x in points))


def df_exponent(part: MarkovPartition, u: Itinerary, v: Itinerary) -> int:
    """ d_f(u, v) = p^-df_exponent """
    for n, (a, b) in enumerate(zip(u.symbols, v.symbols)):
        if a != b:
            return sum(part.tau[s] for s in u.symbols[:n]) + int(part.kappa[a, b])
    raise EqualToHorizon('Itineraries agree on all %d available symbols' % min(len(u), len(v)))


def df_distance(part: MarkovPartition, u: Itinerary, v: Itinerary) -> Fraction:
    return Fraction(part.prime) ** (-df_exponent(part, u, v))


def escape_decomposition(m: PottsBetheMap, part: MarkovPartition, points: Sequence[PadicNumber],
                         horizon: int) -> Dict[str, int]:
    """ Tally points that stay in the partition up to the horizon, fall into the basin of 1, or neither """
    tally = {'stays': 0, 'basin': 0, 'undecided': 0}
    for x in points:
        try:
            encode_itinerary(m, part, x, horizon)
            tally['stays'] += 1
            continue
        except EscapesPartition:
            pass
        except PrecisionExhausted:
            tally['undecided'] += 1
            continue
        outcome = m.basin_decide(x, horizon, partition=[])
        tally['basin' if isinstance(outcome, Converges) else 'undecided'] += 1
    return tally


# --------------------------------------------------------------------------
#            Conjugacy with the full shift on three symbols
# --------------------------------------------------------------------------

def pi_block_map(mm: int, block: Sequence[int]) -> int:
    """ 0^(m+1) -> 0,  0^l 1.. and 0^l 2.. -> l,  1.. -> m+1,  2.. -> m+2 """
    if len(block) != mm + 1:
        raise BadBlockLength('Blocks have length %d, got %d' % (mm + 1, len(block)))
    for l, s in enumerate(block):
        if s not in (0, 1, 2):
            raise ValueError('Symbols are 0, 1, 2')
        if s:
            return l if l > 0 else mm + s
    return 0


def symbol_state_index(mm: int, symbol: int) -> int:
    """ Position of a block-code symbol in the state order D1, H_m, ..., H_1, C2, C3 """
    if symbol == 0 or symbol > mm:
        return symbol
    return mm - symbol + 1


def induced_block_code(mm: int, word: Sequence[int], cyclic: bool = False) -> Tuple[int, ...]:
    """ States of the sliding block code; cyclic words wrap around """
    word = tuple(word)
    n = len(word)
    if cyclic:
        extended = word * (mm // max(n, 1) + 2)
        windows = [extended[i:i + mm + 1] for i in range(n)]
    else:
        windows = [word[i:i + mm + 1] for i in range(n - mm)]
    return tuple(symbol_state_index(mm, pi_block_map(mm, w)) for w in windows)


def periodic_block_code(mm: int, word: Sequence[int]) -> Tuple[int, ...]:
    """ Image of the period-n sequence word word word ... as a period-n word of Σ_(A_m) """
    return induced_block_code(mm, word, cyclic=True)


def check_block_code_bijection(mm: int, n: int) -> Dict[str, int]:
    """ Period-n sequences of the full shift against cyclically admissible words of A_m """
    template = a_m_template(mm)
    images = SortedSet()
    inadmissible = 0
    for word in itertools.product(range(3), repeat=n):
        image = periodic_block_code(mm, word)
        if not is_admissible(image, template, cyclic=True):
            inadmissible += 1
        images.add(image)
    cycles = count_periodic_points(template, n)
    return {'words': 3 ** n, 'distinct_images': len(images), 'inadmissible': inadmissible,
            'admissible_cycles': cycles,
            'bijective': int(len(images) == 3 ** n == cycles and inadmissible == 0)}
