"""Exception types shared across the package."""


class N3LError(Exception):
    """Base class for all package errors."""


class ContractError(N3LError, ValueError):
    """A caller broke a precondition (dimension mismatch, zero vector, ...)."""


class DomainError(N3LError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DegenerateError(DomainError):
    """A ball or line would collapse (zero gap, zero direction)."""


class ConsistencyError(N3LError, RuntimeError):
    """Two independent evaluations of the same quantity disagreed."""
