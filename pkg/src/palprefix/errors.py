"""Exception types shared across the package."""

from __future__ import annotations


class PalPrefixError(Exception):
    """Base class for all errors raised by this package."""


class ContractViolation(PalPrefixError, ValueError):
    """A caller passed arguments outside the documented domain."""


class TransformInapplicable(PalPrefixError):
    """A representation transform was requested where it does not apply."""


class InvalidRepresentation(PalPrefixError):
    """A representation does not describe an affine prefix set of its text."""


class EnumerationOverflow(PalPrefixError):
    """Explicit enumeration would exceed the configured cap."""


class ResourceLimitError(PalPrefixError):
    """The number of live representations exceeded the configured cap."""

    def __init__(self, message: str, level: int | None = None, count: int | None = None):
        super().__init__(message)
        self.level = level
        self.count = count


class InternalInvariantError(PalPrefixError, AssertionError):
    """A state that the algorithm proves unreachable was reached."""


class DecodeError(PalPrefixError):
    """A profile does not correspond to any member of the family."""
