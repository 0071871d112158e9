"""Exception types shared across the package.

Every error raised by the solvers derives from BiflogisError so the CLI can
map any solver failure to a single exit code.
"""


class BiflogisError(Exception):
    """Base class for all package errors."""


class NonFinite(BiflogisError):
    """An integrand returned NaN or infinity at an interior node."""


class NoConvergence(BiflogisError):
    """An iteration failed to reach its tolerance within its budget."""


class InvalidBracket(BiflogisError):
    """A function was evaluated outside its validity region."""


class BracketFailure(BiflogisError):
    """Monotone bracket expansion exceeded its bounds."""


class InvalidRegime(BiflogisError):
    """An operation was requested outside the exponent range it serves."""


class ZeroCoefficients(BiflogisError):
    """Both nonlocal weights are zero; the problem degenerates."""


class MonotonicityViolation(BiflogisError):
    """A runtime monotonicity check of a bracketing assumption failed."""


class WrongRegime(BiflogisError):
    """A verification check was invoked on data from the wrong exponent regime."""


class AmbiguousReading(BiflogisError):
    """Neither candidate constant reading matches the numerical curve."""


class Overflow(BiflogisError):
    """A trajectory exceeded the divergence bound."""


class NoSolution(BiflogisError):
    """No positive solution exists for the requested parameters."""


class DegenerateFit(BiflogisError):
    """An order fit was requested on degenerate abscissae."""


class DivisionByZero(BiflogisError):
    """A constant's formula divides by zero at the requested exponent."""
