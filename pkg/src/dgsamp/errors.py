"""Exception types shared across the package."""


class DgsampError(Exception):
    """Base class for all package errors."""


class GraphError(DgsampError, ValueError):
    """Base class for graph construction/validation errors."""


class SelfLoopError(GraphError):
    pass


class NonPositiveWeightError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class SinkNodeError(GraphError):
    pass


class NotCoReachableError(GraphError):
    pass


class DimensionMismatchError(DgsampError, ValueError):
    pass


class NoConvergenceError(DgsampError, RuntimeError):
    """Iterative solver hit its iteration cap.

    Carries the best iterate / estimate so callers can inspect or salvage it.
    """

    def __init__(self, message, best=None, residual=None, iterations=None):
        super().__init__(message)
        self.best = best
        self.residual = residual
        self.iterations = iterations


class SizeLimitExceededError(DgsampError, ValueError):
    pass


class NotPositiveDefiniteError(DgsampError, ValueError):
    pass


class InvalidRegimeError(DgsampError, ValueError):
    pass


class DegenerateSpectrumError(DgsampError, ValueError):
    pass


class ConstantSignalError(DgsampError, ValueError):
    pass
