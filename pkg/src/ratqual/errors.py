"""Exception hierarchy shared by all ratqual modules."""

from __future__ import annotations


class RatQualError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(RatQualError):
    """Input data violates a domain invariant.

    ``details`` holds one human-readable line per violation, each prefixed
    with a path to the offending field (e.g. ``rates.ds: ...``).
    """

    def __init__(self, message: str, details: list[str] | None = None):
        super().__init__(message)
        self.details: list[str] = list(details or [])


class FormatError(RatQualError):
    """A document could not be parsed (malformed JSON, wrong shape)."""


class NotFoundError(RatQualError):
    """A referenced scope or document does not exist."""


class ConflictError(RatQualError):
    """Compare-and-swap update rejected because the stored version moved."""


class OrderingError(RatQualError):
    """A snapshot timestamp is not strictly after the previous one."""


class StoreIntegrityError(RatQualError):
    """A stored snapshot fails recompute verification."""


class InfeasibleError(RatQualError):
    """No action set on the lattice can reach the requested target ratio."""

    def __init__(self, message: str, max_achievable: float):
        super().__init__(message)
        self.max_achievable = max_achievable


class SearchSpaceError(RatQualError):
    """The exhaustive planner refused a lattice above its enumeration guard."""
