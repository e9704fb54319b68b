import os
from typing import List, Optional, Union

# Defaults for every tunable of the package. Anything below can be overridden
# per instance, and PADIZ_PRECISION overrides the default working precision.

PLUS_INFINITY = float('inf')

Valuation   = Union[int, float]        # int, or PLUS_INFINITY for exact zero
Word        = List[int]
IntList     = List[Optional[int]]

PRECISION_ENV = 'PADIZ_PRECISION'
DEFAULT_PRECISION = 64

PADIZ_CONVENTIONS_ARGS = ('precision', 'max_iter', 'seed', 'samples', 'residual_margin',
                          'compat_margin', 'fixed_point_margin', 'log_limit', 'max_period', 'compat_guard')


def default_precision() -> int:
    """ Working relative precision N, read from the environment on every call """
    return int(os.getenv(PRECISION_ENV) or DEFAULT_PRECISION)


class PadizConventions:

    def __init__(self, precision=None, max_iter=None, seed=None, samples=None, residual_margin=None,
                 compat_margin=None, fixed_point_margin=None, log_limit=None, max_period=None, compat_guard=None):

        # Arithmetic
        self.PRECISION = int(precision or default_precision())
        self.FIXED_POINT_MARGIN = int(fixed_point_margin or 6)   # fixed point residuals must reach N-6
        self.RESIDUAL_MARGIN = int(residual_margin or 8)         # periodic points and TI solutions: N-8
        self.COMPAT_MARGIN = int(compat_margin or 10)            # Kolmogorov compatibility: N-10

        # Dynamics
        self.MAX_ITER = int(max_iter or 50)
        self.MAX_PERIOD = int(max_period or 4)
        self.SEED = int(seed or 0)
        self.SAMPLES = int(samples or 100)

        # Gibbs measures are summed by brute force, so cap the number of configurations
        self.COMPAT_GUARD = int(compat_guard or 10 ** 8)

        # Logging
        self.CONFIRMS = 'confirms'
        self.WARNINGS = 'warnings'
        self.ERRORS = 'errors'
        self.LOG_LIMIT = int(log_limit or 500)
        self.CONFIRMS_LIMIT = self.LOG_LIMIT
        self.WARNINGS_LIMIT = self.LOG_LIMIT
        self.ERROR_LIMIT = self.LOG_LIMIT

        # Report
        self.SCHEMA_VERSION = 1
        self.REPORT_EXAMPLES = 2            # sampled entries kept per tag
        self.EXIT_OK = 0
        self.EXIT_ERROR = 1
        self.EXIT_UNDECIDED = 2

    def conventions_args(self) -> dict:
        return {'precision': self.PRECISION, 'max_iter': self.MAX_ITER, 'seed': self.SEED,
                'samples': self.SAMPLES, 'residual_margin': self.RESIDUAL_MARGIN,
                'compat_margin': self.COMPAT_MARGIN, 'fixed_point_margin': self.FIXED_POINT_MARGIN,
                'log_limit': self.LOG_LIMIT, 'max_period': self.MAX_PERIOD, 'compat_guard': self.COMPAT_GUARD}
