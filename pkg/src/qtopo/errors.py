"""Exception types shared by every module."""


class QtopoError(Exception):
    """Base class for library errors."""


class InvalidArgument(QtopoError, ValueError):
    pass


class PrecisionExceeded(QtopoError, ArithmeticError):
    """A truncated value cannot answer the question exactly."""


class ResourceLimit(QtopoError, RuntimeError):
    """Requested degree or size is above the configured cap."""
