"""Exception types raised across the package."""


class GencolError(Exception):
    """Base class for all package errors."""


class InputError(GencolError, ValueError):
    """Malformed or inconsistent input (unknown vertex, bad partition, ...)."""


class CapacityError(GencolError):
    """An exact search was asked to run beyond its configured size cap."""


class EmbeddingError(GencolError):
    """A rotation system does not describe a plane embedding."""


class NotMaximalError(EmbeddingError):
    """A plane embedding has a non-triangular face where a triangulation is required."""


class InternalConsistencyError(GencolError, AssertionError):
    """A construction invariant failed. Always a bug."""
