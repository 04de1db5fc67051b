"""Exception types shared across the package."""


class GammaresError(Exception):
    """Base class for all package errors."""


class DomainError(GammaresError):
    """Input outside the mathematical domain of the operation."""


class ConvergenceError(GammaresError):
    """An iteration failed to reach the requested residual.

    Carries the last iterate and its residual so callers can inspect
    how close the iteration got.
    """

    def __init__(self, message, last=None, residual=None):
        super().__init__(message)
        self.last = last
        self.residual = residual


class SingularProximityError(GammaresError):
    """Evaluation point or path came within the guard radius of a
    branch point over 2*pi*i*Z."""


class QuadratureError(GammaresError):
    """Adaptive quadrature could not meet the requested tolerance."""


class PathError(GammaresError):
    """Malformed continuation path (detour off the ray, wrong order, ...)."""


class StokesJumpError(GammaresError):
    """Directional Laplace transforms disagree beyond tolerance: the
    requested sector straddles a singular direction."""
