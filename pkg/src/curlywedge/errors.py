"""Exception types shared across the package."""


class CurlywedgeError(Exception):
    """Base class for all package-specific errors."""


class FormatError(CurlywedgeError, ValueError):
    """Malformed presentation source (syntax, non-normal word, bad index)."""


class InconsistencyError(CurlywedgeError, ValueError):
    """A presentation failed its overlap consistency checks.

    ``failures`` holds human-readable descriptions of the failing overlaps.
    """

    def __init__(self, message, failures=()):
        super().__init__(message)
        self.failures = tuple(failures)


class BoundExceeded(CurlywedgeError, RuntimeError):
    """An enumeration or search exceeded its configured bound."""


class CrossCheckError(CurlywedgeError, RuntimeError):
    """Two computations that must agree did not; signals an internal bug."""


class InfiniteIndexError(CurlywedgeError, ValueError):
    """A lattice quotient that must be finite has infinite index."""
