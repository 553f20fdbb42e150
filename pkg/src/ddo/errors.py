"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class BoundaryUnphysical(DomainError):
    """A channel sits exactly on a regime boundary, where no regime applies."""


class NoBoundState(Exception):
    """The requested channel supports no physically acceptable bound state."""

    def __init__(self, message: str, inequalities: dict = None):
        super().__init__(message)
        self.inequalities = inequalities or {}


class ConsistencyError(ArithmeticError):
    """An internal invariant failed (e.g. a negative E^2 - 1 in a valid regime)."""


class DivergenceSuspected(ArithmeticError):
    """An integral did not settle under order doubling."""


class ConfigurationError(ValueError):
    """Invalid numerical configuration (grid size, quadrature order, ...)."""


class EigenSolverError(ArithmeticError):
    """The banded eigensolver failed to converge."""
