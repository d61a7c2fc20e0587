class BlochError(ValueError):
    """Base class for domain errors (bad dimensions, invalid matrices)."""


class DimensionMismatch(BlochError):
    pass


class InvalidMatrix(BlochError):
    pass
