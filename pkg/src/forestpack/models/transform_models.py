"""Records describing graph surgeries so they can be reported or undone."""

from dataclasses import dataclass

from forestpack.models.graph import EdgeId, VertexId


@dataclass(frozen=True)
class SplitRecord:
    """A splitting-off step at a center vertex.

    Attributes:
        center: Vertex the two edges were split off from
        removed: The edges xy and xz that were removed
        added: The new edge yz
        endpoints: Far endpoints (y, z) of the removed edges, y != z
    """

    center: VertexId
    removed: tuple[EdgeId, EdgeId]
    added: EdgeId
    endpoints: tuple[VertexId, VertexId]

    def to_dict(self) -> dict:
        """Plain representation for reports."""
        return {
            "center": self.center,
            "removed": list(self.removed),
            "added": self.added,
            "endpoints": list(self.endpoints),
        }


@dataclass(frozen=True)
class SuppressRecord:
    """A degree-2 vertex replaced by a single edge between its neighbors."""

    vertex: VertexId
    replaced: tuple[EdgeId, EdgeId]
    new_edge: EdgeId
    endpoints: tuple[VertexId, VertexId]


@dataclass(frozen=True)
class FakeEdgeRecord:
    """Flagged parallel edges padding a vertex up to a target incidence.

    Attributes:
        at: Padded vertex
        anchor: Other endpoint of every fake edge
        edge_ids: Ids of the fake edges
    """

    at: VertexId
    anchor: VertexId
    edge_ids: frozenset[EdgeId]


@dataclass(frozen=True)
class LoopRecord:
    """An edge deleted and replaced by bookkeeping loops at its reserve endpoints.

    Attributes:
        edge: Id of the deleted edge
        endpoints: Its endpoint pair
        loops: Map from reserve endpoint to the loop standing in for the edge
    """

    edge: EdgeId
    endpoints: tuple[VertexId, VertexId]
    loops: tuple[tuple[VertexId, EdgeId], ...]

    @property
    def loop_ids(self) -> frozenset[EdgeId]:
        """Ids of all loops added for this edge."""
        return frozenset(loop for _, loop in self.loops)
