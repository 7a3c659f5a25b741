"""Exception types shared across the package."""


class RaywittError(Exception):
    """Base class for domain errors raised by this package."""


class DimensionMismatchError(RaywittError):
    """Vector or covector with the wrong ambient rank."""


class UndecidableError(RaywittError):
    """A bounded search could not settle the question; widen the bounds."""


class ExactnessError(RaywittError):
    """A division that had to be exact was not."""


class CapExceededError(RaywittError):
    """A resource cap (cell dimension, search window) was exceeded."""


class InternalInvariantError(RaywittError):
    """An internal consistency check failed; indicates a bug, not bad input."""
