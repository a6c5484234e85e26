"""Exception types shared across the package."""


class QtmError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(QtmError):
    """Invalid user input: bad tape spec, out-of-range site index, malformed
    angle expression, unsupported flag combination."""


class NumericalValidationError(QtmError):
    """A numeric sanity check failed, e.g. the state norm drifted beyond
    tolerance during a run."""


class CircleFitError(QtmError):
    """Circle-invariant fit did not reach the requested residual.

    Carries the offending residual and the worst points so the caller can
    report what the trajectory actually looks like.
    """

    def __init__(self, message, residual=None, worst=None, num_circles=None):
        super().__init__(message)
        self.residual = residual
        self.worst = worst if worst is not None else []
        self.num_circles = num_circles
