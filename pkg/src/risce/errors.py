"""Exception types raised by the library."""


class RisceError(Exception):
    """Base class for all library errors."""


class DomainError(RisceError, ValueError):
    """An input lies outside the physical or mathematical domain of an operation."""


class SingularityError(RisceError, ArithmeticError):
    """A denominator fell below the supported magnitude tolerance."""


class DimensionError(RisceError, ValueError):
    """Matrix or tensor dimensions are inconsistent."""


class IdentifiabilityError(RisceError, ValueError):
    """A configuration cannot support unique channel recovery (e.g. K < N)."""


class DegenerateInputError(RisceError, ValueError):
    """An input is degenerate for the requested operation (e.g. an all-zero tensor)."""


class IllPosedError(RisceError, ArithmeticError):
    """A least-squares subproblem is rank deficient."""


class DivergenceError(RisceError, ArithmeticError):
    """An iterate became non-finite.

    Attributes
    ----------
    iteration : int
        1-based sweep index at which the non-finite value appeared.
    """

    def __init__(self, message, iteration):
        super().__init__(message)
        self.iteration = iteration


class AlignmentError(RisceError, ValueError):
    """Scaling alignment failed (zero-norm or orthogonal estimated column)."""


class SweepError(RisceError, RuntimeError):
    """Too many Monte Carlo runs failed for the sweep result to be trusted."""
