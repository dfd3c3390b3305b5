"""Exception types shared by the whole package."""


class BracesError(Exception):
    """Base class for all errors raised by this package."""


class ContractViolationError(BracesError):
    """An operation was called with arguments violating its precondition."""


class SingularSeriesError(BracesError):
    """A series with zero linear coefficient cannot be compositionally inverted."""


class InsufficientOrderError(BracesError):
    """The requested computation needs coefficients beyond the truncation order."""


class UsageError(BracesError):
    """Malformed user-facing input (unknown preset name, bad flag value)."""
