# Every failure the package reports on purpose is a PadizError. The CLI maps these to exit code 1.


class PadizError(Exception):
    pass


class NotPrime(PadizError, ValueError):
    pass


class PrecisionExhausted(PadizError):
    """ A quantity cannot be decided from the digits that are known """
    pass


class DivisionByZero(PadizError, ZeroDivisionError):
    pass


class OutOfDomain(PadizError, ValueError):
    pass


class HenselHypothesisFailed(PadizError):
    pass


class MultiplicityUnresolved(PadizError):
    pass


class OutOfRegime(PadizError, ValueError):
    pass


class SingularInput(PadizError):
    pass


class NotScalingDomain(PadizError):
    pass


class EscapesPartition(PadizError):

    def __init__(self, step, message=None):
        self.step = step
        super().__init__(message or 'Orbit leaves the partition at step ' + str(step))


class InadmissibleWord(PadizError):
    pass


class EqualToHorizon(PadizError):
    pass


class BadBlockLength(PadizError, ValueError):
    pass


class DegenerateForm(PadizError):
    pass


class InadmissibleAlpha(PadizError, ValueError):
    pass


class NotACycle(PadizError):

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or 'Cycle relation fails at index ' + str(index))


class PartitionFunctionZero(PadizError):
    pass


class Infeasible(PadizError):
    pass


class ConfigError(PadizError):

    def __init__(self, diagnostics):
        self.diagnostics = dict(diagnostics)
        super().__init__('; '.join(k + ': ' + v for k, v in sorted(self.diagnostics.items())))


class ParseError(PadizError, ValueError):

    def __init__(self, message, position):
        self.position = position
        super().__init__(message + ' at position ' + str(position))
