"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class ExceptaError(Exception):
    """Base class for all library errors."""


class ConstructionError(ExceptaError, ValueError):
    """Invalid family/rank pair or malformed input data."""


class PrimeError(ExceptaError, ValueError):
    """A prime was required but something else was supplied."""


class SpecialPrimeError(ExceptaError, ValueError):
    """The operation is only valid for non-special primes."""


class OverflowCapError(ExceptaError):
    """An enumeration hit its cap. ``count`` is how far it got."""

    def __init__(self, message: str, count: int) -> None:
        super().__init__(message)
        self.count = count


class IntegrityError(ExceptaError):
    """Two verdict branches fired for the same input."""
