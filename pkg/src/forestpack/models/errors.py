"""Exception hierarchy for forestpack.

Search verdicts (FEASIBLE, INFEASIBLE, TIMEOUT) are returned as values. Exceptions
are reserved for misuse of an operation and for broken internal invariants.
"""

from pathlib import Path
from typing import Optional


class ForestpackError(Exception):
    """Base class for all forestpack errors."""


class GraphError(ForestpackError):
    """Invalid operation on a MultiGraph."""


class UnknownVertexError(GraphError):
    """A vertex id is not live in the graph."""

    def __init__(self, vertex: int):
        super().__init__(f"Unknown vertex: {vertex}")
        self.vertex = vertex


class UnknownEdgeError(GraphError):
    """An edge id is not live in the graph."""

    def __init__(self, edge: int):
        super().__init__(f"Unknown edge: {edge}")
        self.edge = edge


class TerminalSystemError(ForestpackError):
    """A TerminalSystem violates one of its invariants.

    Attributes:
        invariant: Short name of the violated invariant
    """

    def __init__(self, invariant: str, message: str):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


class GraphParseError(ForestpackError):
    """A graph file could not be parsed.

    Attributes:
        path: File being parsed (None for in-memory text)
        line_number: 1-based line of the offending record (0 for file-level errors)
    """

    def __init__(self, message: str, line_number: int, path: Optional[Path] = None):
        location = f"{path}:{line_number}" if path else f"line {line_number}"
        super().__init__(f"{location}: {message}")
        self.path = path
        self.line_number = line_number
        self.reason = message


class PreconditionError(ForestpackError):
    """An operation was called outside its documented preconditions."""


class InternalInvariantError(ForestpackError):
    """A result contradicts a self-check or a theorem the code relies on."""
