"""
Exception hierarchy shared by every operadkit module.

All errors derive from ValueError so callers that catch ValueError keep working.
"""
from typing import Optional


class OperadkitError(ValueError):
    """Base class of every error raised by the library."""


class TreeError(OperadkitError):
    """Invalid tree monomial (shuffle condition, labels, unknown generator)."""


class CompositionError(OperadkitError):
    """Incompatible arguments to an infinitesimal composition."""


class OrderError(OperadkitError):
    """Comparison outside the domain of a monomial order."""


class PresentationError(OperadkitError):
    """Invalid presentation data."""


class InhomogeneousRelationError(PresentationError):
    """A relation mixes arities, weights or parities."""


class ActionError(PresentationError):
    """A symmetric group action is not a valid monomial action."""


class ParseError(OperadkitError):
    """Syntax error in a presentation file."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        location = ""
        if line is not None:
            location = f"line {line}"
            if column is not None:
                location += f", column {column}"
            location += ": "
        super().__init__(f"{location}{message}")


class NotCompletedError(OperadkitError):
    """Query outside the completed region of a Groebner basis."""


class ResourceLimitError(OperadkitError):
    """A slice exceeds the configured enumeration or matrix caps."""


class NonQuadraticError(OperadkitError):
    """Quadratic duality requested for a presentation with non-quadratic relations."""


class SeriesError(OperadkitError):
    """Violated precondition on a formal power series."""


class UnknownPresetError(OperadkitError):
    """Unknown preset name or invalid preset parameters."""


class NumberError(OperadkitError):
    """Index outside the domain of a combinatorial number."""
