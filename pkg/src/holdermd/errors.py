"""Exception types raised across the package."""


class HolderMDError(Exception):
    """Base class for all package errors."""


class ResourceLimitError(HolderMDError):
    """A construction would exceed a configured size cap."""


class DomainError(HolderMDError, ValueError):
    """An input lies outside the domain of an operation (e.g. outside the unit ball)."""


class EmptyWindowError(HolderMDError, ValueError):
    pass


class ToleranceNotReachableError(HolderMDError):
    """A certified series could not be truncated within the requested tolerance."""
