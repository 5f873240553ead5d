"""Structured exceptions shared across the package."""


class CheapTalkError(Exception):
    """Base class for all structured errors raised by this package."""


class DimensionMismatch(CheapTalkError):
    """Vector/matrix dimensions do not agree."""


class ValidationError(CheapTalkError):
    """A game, policy, strategy, or profile violates a structural invariant."""


class NotAnEquilibrium(CheapTalkError):
    """An operation requires an equilibrium profile and was given a non-equilibrium."""

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class GuardExceeded(CheapTalkError):
    """An instance exceeds a solver's size guard; pass the override flag to force."""


class DimacsError(CheapTalkError):
    """Malformed DIMACS CNF input."""

    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class ReductionError(CheapTalkError):
    """The formula cannot be compiled into a game instance (regularity, d range, ...)."""
