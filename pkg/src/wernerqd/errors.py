"""Exception types raised by the library."""


class WernerError(Exception):
    """Base class for all library errors."""


class CapacityError(WernerError):
    """A dense object would exceed the configured dimension cap."""


class DimensionError(WernerError, ValueError):
    """Matrix shape does not match the requested factorization."""


class ValidationError(WernerError, ValueError):
    """Input violates a documented invariant (Hermiticity, parameter range)."""


class DomainError(WernerError, ValueError):
    """Evaluation point lies outside the domain of a closed form."""


class NegativeEigenvalueError(WernerError, ValueError):
    """An entropy was requested for a spectrum with a genuinely negative entry."""


class ConvergenceError(WernerError, RuntimeError):
    """The Jacobi eigensolver hit its sweep cap."""

    def __init__(self, message: str, off_norm: float):
        super().__init__(message)
        self.off_norm = off_norm
