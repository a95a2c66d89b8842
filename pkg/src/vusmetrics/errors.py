"""Exception types shared across the package."""


class VusMetricsError(Exception):
    """Base class for all package errors."""


class UsageError(VusMetricsError):
    """Caller violated a precondition (bad argument, mismatched lengths)."""


class DataError(VusMetricsError):
    """Input data failed validation (parse errors, non-finite values)."""


class ResourceError(VusMetricsError):
    """A resource budget (memory) would be exceeded."""
