"""Exception types shared across the package."""

from __future__ import annotations


class GChainError(Exception):
    """Base class for every error raised by gchain."""


class NotAChain(GChainError, ValueError):
    """An element of a candidate chain has no valid derivation."""

    def __init__(self, index: int, reason: str = "no derivation from earlier elements"):
        self.index = index
        self.reason = reason
        super().__init__(f"element {index}: {reason}")


class LimitExceeded(GChainError):
    """A search ran out of its budget before finishing."""

    def __init__(self, limit: str, value: int, partial=None):
        self.limit = limit
        self.value = value
        self.partial = partial
        super().__init__(f"{limit} exceeded (limit {value})")


class Overflow(GChainError, OverflowError):
    """A value left the supported integer domain [1, 2**63 - 1]."""


class ConditionUnmet(GChainError, ValueError):
    """Parameters do not satisfy a comparison row's precondition."""
