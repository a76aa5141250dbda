"""Exception types raised across the package."""


class DimensionError(ValueError):
    """A block or matrix does not have the shape the problem requires."""

    def __init__(self, message, block=None):
        super().__init__(message)
        self.block = block


class NotUnitError(ValueError):
    """A block vector is too far from the unit sphere to be renormalized."""


class BudgetError(ValueError):
    """An exhaustive routine was asked to search a space larger than its budget."""


class SingularMultiplierError(ZeroDivisionError):
    """A multiplier is (numerically) zero where its inverse is needed."""


class DualityPreconditionError(ValueError):
    """The input vector does not solve the primal normal equation."""

    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


class NotSymmetricError(ValueError):
    pass


class UndefinedRatioError(ZeroDivisionError):
    pass


class ConvergenceError(RuntimeError):
    """An internal iteration exceeded its hard cap."""
