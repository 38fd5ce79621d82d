"""Semantic exceptions shared across the package."""


class LaplaceCIError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(LaplaceCIError, ValueError):
    """An argument violates a documented precondition."""


class ResourceLimitError(LaplaceCIError, RuntimeError):
    """A request exceeds a configured resource guard (e.g. grid size)."""
