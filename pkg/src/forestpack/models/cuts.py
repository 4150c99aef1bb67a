"""Models for cuts and path systems produced by the connectivity oracles."""

from dataclasses import dataclass, field
from typing import NamedTuple

from forestpack.models.graph import EdgeId, VertexId


@dataclass(frozen=True)
class CutCertificate:
    """Vertex bipartition with the edges crossing it.

    Attributes:
        side_a: Source side of the cut
        side_b: Remaining vertices
        crossing: Ids of edges with one endpoint on each side
    """

    side_a: frozenset[VertexId]
    side_b: frozenset[VertexId]
    crossing: frozenset[EdgeId]

    @property
    def size(self) -> int:
        """Number of crossing edges."""
        return len(self.crossing)

    def sort_key(self) -> tuple[int, list[VertexId]]:
        """Canonical tie-breaking key: (size, sorted side_a)."""
        return (self.size, sorted(self.side_a))

    def to_dict(self) -> dict:
        """Plain representation for JSON reports."""
        return {
            "size": self.size,
            "side_a": sorted(self.side_a),
            "side_b": sorted(self.side_b),
            "crossing": sorted(self.crossing),
        }


class FlowResult(NamedTuple):
    """Value of a minimum cut and the cut that attains it."""

    value: int
    cut: CutCertificate


class SeparationResult(NamedTuple):
    """Minimum cut keeping every terminal group on one side."""

    value: int
    cut: CutCertificate
    group_split: tuple[tuple[int, ...], tuple[int, ...]]


@dataclass
class PathSystem:
    """Edge-disjoint paths leaving a common source.

    Attributes:
        source: Start vertex shared by every path
        paths: Edge-id sequences, one per path (empty tuple = empty path)
        ends: End vertex of each path, aligned with `paths`
    """

    source: VertexId
    paths: list[tuple[EdgeId, ...]] = field(default_factory=list)
    ends: list[VertexId] = field(default_factory=list)

    def __len__(self) -> int:
        """Number of paths in the system."""
        return len(self.paths)

    @property
    def total_length(self) -> int:
        """Sum of path lengths in edges."""
        return sum(len(path) for path in self.paths)

    @property
    def sinks(self) -> set[VertexId]:
        """Distinct end vertices."""
        return set(self.ends)

    def to_dict(self) -> dict:
        """Plain representation for JSON reports."""
        return {
            "source": self.source,
            "paths": [list(path) for path in self.paths],
            "ends": list(self.ends),
            "total_length": self.total_length,
        }
