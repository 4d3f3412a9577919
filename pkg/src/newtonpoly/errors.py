"""Exception types shared by every module."""


class DomainError(ValueError):
    """Input outside the domain of an operation (bad text, bad parameters)."""


class UnsupportedCaseError(Exception):
    """The operation is not defined for this degenerate or exceptional input."""


class ConsistencyError(AssertionError):
    """An internal cross-check between two independent computations failed."""
