"""Exception types raised across the package."""


class DimensionError(ValueError):
    """Operands of incompatible or invalid dimension."""


class DegenerateDimension(DimensionError):
    """Dimension below the minimum the construction supports."""


class IndexOutOfRange(ValueError):
    pass


class DenseCapExceeded(ValueError):
    """Dense representation requested above the configured cap."""


class NormalizationError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    def __init__(self, message, residual):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class ImpossibleOutcome(ValueError):
    """Projection annihilates the state."""


class InvalidMeasurement(ValueError):
    pass
