"""Exception types shared across the package."""

from __future__ import annotations


class PafpError(Exception):
    """Base class for all errors raised by this package."""


class SharedEndpointError(PafpError):
    """Two forbidden pairs share an endpoint where distinct endpoints are required."""


class WrongClassError(PafpError):
    """Instance does not belong to the structure class a solver requires."""


class BudgetExceededError(PafpError):
    """Exhaustive search exceeded its configured state or pair budget."""


class DimensionMismatchError(PafpError):
    """Matrix operands have incompatible shapes."""


class LengthMismatchError(PafpError):
    """Sequences that must have equal length do not."""


class NoSuchPairError(PafpError):
    """A pair index is out of range."""


class InfeasibleError(PafpError):
    """Requested random instance parameters cannot be realised."""


class NonTerminationError(PafpError):
    """The rule-based reducer stopped making progress; the precondition likely fails."""


class InvalidPathError(PafpError):
    """A path is structurally invalid: wrong endpoints, not increasing, or not edge-connected."""


class ParseError(PafpError):
    """Base class for text-format errors; carries the offending line when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InstanceSyntaxError(ParseError):
    """Malformed line in the instance text format."""


class InstanceSemanticError(ParseError):
    """Well-formed line with inadmissible content (range, order, duplicates)."""


class DimacsError(ParseError):
    """Malformed or non-strict-3-CNF DIMACS input."""
