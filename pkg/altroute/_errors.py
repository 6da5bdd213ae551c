"""Exception types raised by altroute."""

from __future__ import annotations


class AltrouteError(ValueError):
    """Base class for invalid input reported by altroute."""


class DegenerateInput(AltrouteError):
    """Raised when points violate general position (collinear triples, radial ties)."""


class PointInsideHull(AltrouteError):
    """Raised when a viewpoint lies inside or on the convex hull it should see."""


class PreconditionViolated(AltrouteError):
    """Raised when colour counts, endpoints or modes do not meet an operation's requirements."""


class SpecialConfiguration(PreconditionViolated):
    """Raised when a red/blue endpoint pair forms a special configuration."""


class TooLarge(AltrouteError):
    """Raised when an exhaustive search is asked to handle too many points."""


class InvalidPattern(AltrouteError):
    """Raised for malformed run-length colour patterns such as ``R5X``."""


class ParseError(AltrouteError):
    """Raised for malformed instance or route files.

    Parameters
    ----------
    message : str
        Description of the problem.
    line : int
        1-based line number.
    column : int, default 1
        1-based column number.
    """

    def __init__(self, message: str, line: int, column: int = 1) -> None:
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class InternalError(AssertionError):
    """Raised when a construction step finds one of its geometric assumptions broken."""
