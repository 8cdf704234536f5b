"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined."""


class TruncationError(RuntimeError):
    """A truncated Fock-space computation lost more norm than allowed."""
