"""Exception types shared across the package."""


class FrobcohError(Exception):
    """Base class for all package errors."""


class InvalidType(FrobcohError, ValueError):
    pass


class DegreeOutOfRange(FrobcohError, ValueError):
    pass


class LengthError(FrobcohError, ValueError):
    pass


class ScopeExceeded(FrobcohError, ValueError):
    pass


class PrimeGateError(FrobcohError, ValueError):
    """Raised when a prime is outside the range where a closed form is valid."""


class PrimeGateWarning(UserWarning):
    pass


class InternalInconsistency(FrobcohError, RuntimeError):
    """Two mutually exclusive cases matched the same input."""


class NotDominant(FrobcohError, ValueError):
    pass


class FiltrationViolation(FrobcohError, RuntimeError):
    pass


class NotRestricted(FrobcohError, ValueError):
    """A weight expected in X_1(T) has a coordinate outside [0, p)."""
