"""Exception types raised by arccoord."""


class ArcCoordError(Exception):
    """Base class for all arccoord errors."""


class InvalidPermutation(ArcCoordError, ValueError):
    pass


class CircleMismatch(ArcCoordError, ValueError):
    pass


class NonPositiveLength(ArcCoordError, ValueError):
    pass


class DegenerateHexagon(ArcCoordError, ValueError):
    pass


class ConventionMismatch(ArcCoordError):
    pass


class BoundaryTooLong(ArcCoordError, ValueError):
    pass


class DifferentCircles(ArcCoordError, ValueError):
    pass


class NumericalClosureFailure(ArcCoordError):
    pass


class NonFlippable(ArcCoordError, ValueError):
    pass


class FlipLimitExceeded(ArcCoordError):
    pass


class InvalidTarget(ArcCoordError, ValueError):
    pass


class ImproperSystem(ArcCoordError, ValueError):
    pass


class NotTrivalent(ArcCoordError, ValueError):
    pass


class SingularJacobian(ArcCoordError):
    pass


class NoConvergence(ArcCoordError):
    """Newton iteration did not reach the requested tolerance.

    ``best`` holds the best iterate found (a-lengths) and ``residual`` its
    sup-norm residual.
    """

    def __init__(self, message, best=None, residual=float("nan")):
        super().__init__(message)
        self.best = best
        self.residual = residual
