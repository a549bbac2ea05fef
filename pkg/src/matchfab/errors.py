"""Exception types shared across the package."""

from __future__ import annotations


class MatchfabError(Exception):
    """Base class for all library errors."""


class GenerationTooLarge(MatchfabError):
    """Requested generation exceeds the configured cap."""

    def __init__(self, g: int, cap: int) -> None:
        super().__init__(f"generation {g} exceeds cap {cap}")
        self.g = g
        self.cap = cap


class CapExceeded(MatchfabError):
    """An enumeration or elimination would exceed its resource cap."""


class InconsistencyError(MatchfabError):
    """Two routes that must agree produced different values."""


class DomainError(MatchfabError, ValueError):
    """A closed form was evaluated outside the range where it holds."""


class NotPerfectSquare(MatchfabError):
    """Determinant of a skew adjacency matrix is not a perfect square."""
