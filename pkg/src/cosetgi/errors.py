"""Shared exception types.

Budget exhaustion is deliberately a distinct type so callers can tell
"search gave up" apart from "search completed and found nothing".
"""


class CosetGIError(Exception):
    """Base class for all library errors."""


class ParseError(CosetGIError, ValueError):
    """Malformed textual input; carries the offending position when known."""

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class DegreeMismatchError(CosetGIError, ValueError):
    """Permutations of different degrees were combined."""


class NotASubgroupError(CosetGIError, ValueError):
    """A claimed subgroup has a generator outside the ambient group."""


class NotCoreFreeError(CosetGIError, ValueError):
    """The coset action is unfaithful; carries the core as witness."""

    def __init__(self, message, core=None):
        super().__init__(message)
        self.core = core


class BudgetExceededError(CosetGIError, RuntimeError):
    """A bounded search ran out of budget before reaching a verdict."""
