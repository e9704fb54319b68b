import os
from fractions import Fraction

from padiz.conventions import PADIZ_CONVENTIONS_ARGS

# Parameter triples (p, θ, q) the test suite reproduces results for.
# PADIZ_TEST_PRECISION raises or lowers the working precision of every instance.

PADIZ_TEST_PRECISION = int(os.getenv('PADIZ_TEST_PRECISION') or 64)

PADIZ_TEST_INSTANCES = {
    'full_shift':   {'prime': 7, 'theta': 1 + Fraction(7) ** 3, 'q': 7},
    'a_1':          {'prime': 7, 'theta': 1 + Fraction(7) ** 2, 'q': 7},
    'a_2':          {'prime': 7, 'theta': 1 + Fraction(7) ** 3, 'q': 49},
    'a_3':          {'prime': 7, 'theta': 1 + Fraction(7) ** 4, 'q': 343},
    'three_no_root': {'prime': 3, 'theta': 1 + Fraction(9), 'q': 3},
    'three_root':   {'prime': 3, 'theta': 1 + Fraction(3) ** 4, 'q': 9},
    'two_root':     {'prime': 2, 'theta': 1 + Fraction(4), 'q': 2},
}

PADIZ_TEST_CONFIG = {'precision': PADIZ_TEST_PRECISION, 'seed': 0, 'samples': 40, 'max_iter': 50}
for arg in PADIZ_TEST_CONFIG:
    if arg not in PADIZ_CONVENTIONS_ARGS:
        raise Exception('PADIZ_TEST_CONFIG has an unknown argument ' + arg)


def instance(name: str, precision: int = None):
    """ PottsBetheMap for a named instance """
    from padiz.potts_bethe import PottsBetheMap
    params = PADIZ_TEST_INSTANCES[name]
    return PottsBetheMap.from_rationals(params['prime'], params['theta'], params['q'],
                                        precision or PADIZ_TEST_PRECISION)
