"""Typed exceptions shared across the simulator."""


class HomsimError(Exception):
    """Base class for all simulator errors."""


class DomainError(HomsimError):
    """An input is outside the physical domain (non-positive width, negative mean, ...)."""


class CoverageError(HomsimError):
    """A frequency grid does not cover the requested spectral feature."""


class ConfigurationError(HomsimError):
    """Inconsistent configuration (grid mismatch, unknown key, bad range)."""


class DegenerateInputError(HomsimError):
    """Zero-norm state or zero-width filter where a finite one is required."""


class FitConvergenceError(HomsimError):
    """Nonlinear fit failed to converge; carries the best iterate found."""

    def __init__(self, message, best_params=None):
        super().__init__(message)
        self.best_params = best_params
