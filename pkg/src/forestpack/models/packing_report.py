"""Models for packing verification results and error reporting."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional


class CheckType(Enum):
    """Checks performed by verify_packing."""

    LIVENESS = "liveness"  # Every edge id exists in the host graph
    DISJOINTNESS = "disjointness"  # Classes share no edge
    CONNECTIVITY = "connectivity"  # Each group connected inside each class
    EXTENSION = "extension"  # P_i in H_i and the vertex is no cut vertex of H_i
    BALANCE = "balance"  # Induced subpartitions are balanced
    FAKE_EDGES = "fake_edges"  # No flagged fake edge is used


@dataclass
class PackingIssue:
    """Single failure found while verifying a packing.

    Args:
        type: Check that failed
        message: Description of the failure
        class_index: Offending class (0-based), None for packing-level issues
        context: Extra detail such as the vertices or edges involved
    """

    type: CheckType
    message: str
    class_index: Optional[int] = None
    context: str = ""

    def to_dict(self) -> dict:
        """Plain representation for JSON reports."""
        return {
            "type": self.type.value,
            "message": self.message,
            "class_index": self.class_index,
            "context": self.context,
        }


@dataclass
class PackingReport:
    """Results from verifying a packing.

    Args:
        checks: Verdict per check that was run
        issues: Failures found
        stats: Counts such as classes and edges used
    """

    checks: dict[CheckType, bool] = field(default_factory=dict)
    issues: list[PackingIssue] = field(default_factory=list)
    stats: dict[str, int] = field(default_factory=dict)

    @property
    def is_valid(self) -> bool:
        """Whether every check passed."""
        return all(self.checks.values()) and not self.issues

    def add_issue(self, issue: PackingIssue) -> None:
        """Record an issue and mark its check as failed."""
        self.issues.append(issue)
        self.checks[issue.type] = False

    def to_dict(self) -> dict:
        """Plain representation for JSON reports."""
        return {
            "is_valid": self.is_valid,
            "checks": {check.value: passed for check, passed in self.checks.items()},
            "issues": [issue.to_dict() for issue in self.issues],
            "stats": dict(self.stats),
        }
