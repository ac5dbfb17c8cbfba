"""
Error types for the DecarbPath model and services.

Core model functions raise these; the service layer turns them into
result dictionaries and flagged table rows.
"""

from typing import Optional


class DecarbError(Exception):
    """Base class for every DecarbPath failure."""


class DomainError(DecarbError, ValueError):
    """A parameter or argument lies outside the model's domain."""


class GridError(DecarbError):
    """A time grid is malformed or does not cover the requested horizon."""


class InfeasibleGoalError(DecarbError):
    """A cumulative-emissions goal cannot be met by the requested pathway kind."""

    def __init__(self, message: str, goal: Optional[float] = None, bau: Optional[float] = None):
        super().__init__(message)
        self.goal = goal
        self.bau = bau


class SolverError(DecarbError):
    """A root finder failed to converge or its map was not monotone."""


class FitError(DecarbError):
    """A regression could not be carried out on the supplied data."""


class ConfigError(DecarbError):
    """
    A scenario document could not be parsed or validated.
    
    Attributes:
        line: 1-based line number in the document, if known
        key: Dotted key the error refers to, if known
    """

    def __init__(self, message: str, line: Optional[int] = None, key: Optional[str] = None):
        context = []
        if line is not None:
            context.append(f"line {line}")
        if key is not None:
            context.append(f"key '{key}'")
        if context:
            message = f"{message} ({', '.join(context)})"
        super().__init__(message)
        self.line = line
        self.key = key
