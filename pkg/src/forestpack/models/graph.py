"""Multigraph model with stable edge identities.

A MultiGraph stores vertices and an edge multiset keyed by integer ids. Parallel
edges and self-loops are allowed. Graphs derived from one another (by contraction,
subdivision, deletion or copying) share an IdAllocator, so edge ids stay unique
across the whole family and derived edge sets can be merged by id.
"""

from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Optional

import networkx as nx

from forestpack.models.errors import (
    GraphError,
    PreconditionError,
    TerminalSystemError,
    UnknownEdgeError,
    UnknownVertexError,
)

VertexId = int
EdgeId = int


class EdgeKind(Enum):
    """Flags carried by an edge."""

    REGULAR = "regular"
    FAKE = "fake"  # Temporary degree padding at a contracted vertex
    LOOP = "loop"  # Bookkeeping loop standing in for a deleted edge


@dataclass
class IdAllocator:
    """Monotone id counters shared by a graph family.

    Attributes:
        next_vertex: Next vertex id to hand out
        next_edge: Next edge id to hand out
    """

    next_vertex: int = 0
    next_edge: int = 0

    def vertex(self) -> VertexId:
        """Allocate a fresh vertex id."""
        vid = self.next_vertex
        self.next_vertex += 1
        return vid

    def edge(self) -> EdgeId:
        """Allocate a fresh edge id."""
        eid = self.next_edge
        self.next_edge += 1
        return eid

    def observe_vertex(self, vertex: VertexId) -> None:
        """Make sure a caller-chosen vertex id is never handed out again."""
        self.next_vertex = max(self.next_vertex, vertex + 1)

    def observe_edge(self, edge: EdgeId) -> None:
        """Make sure a caller-chosen edge id is never handed out again."""
        self.next_edge = max(self.next_edge, edge + 1)


class ContractionResult(NamedTuple):
    """Outcome of contracting a vertex set."""

    graph: "MultiGraph"
    new_vertex: VertexId
    kept: frozenset[EdgeId]


class SubdivisionResult(NamedTuple):
    """Outcome of subdividing an edge."""

    vertex: VertexId
    first: EdgeId
    second: EdgeId


class MultiGraph:
    """Undirected multigraph with self-loops and stable edge ids.

    Degree counts a loop twice; incident_edge_count counts it once.

    Attributes:
        allocator: Id counters shared with every graph derived from this one
    """

    def __init__(self, allocator: Optional[IdAllocator] = None):
        """Initialize an empty graph.

        Args:
            allocator: Family allocator to share; a new one is created if omitted
        """
        self.allocator = allocator if allocator is not None else IdAllocator()
        self._incidence: dict[VertexId, dict[EdgeId, None]] = {}
        self._edges: dict[EdgeId, tuple[VertexId, VertexId]] = {}
        self._kinds: dict[EdgeId, EdgeKind] = {}

    def __repr__(self) -> str:
        """Summarize the graph size."""
        return (
            f"MultiGraph(vertices={len(self._incidence)}, edges={len(self._edges)})"
        )

    # Queries

    @property
    def vertices(self):
        """Live vertex ids as a read-only set-like view."""
        return self._incidence.keys()

    @property
    def edges(self) -> Mapping[EdgeId, tuple[VertexId, VertexId]]:
        """Read-only map from edge id to its endpoint pair."""
        return MappingProxyType(self._edges)

    def number_of_vertices(self) -> int:
        """Number of live vertices."""
        return len(self._incidence)

    def number_of_edges(self) -> int:
        """Number of live edges."""
        return len(self._edges)

    def has_vertex(self, vertex: VertexId) -> bool:
        """Whether `vertex` is live."""
        return vertex in self._incidence

    def has_edge(self, edge: EdgeId) -> bool:
        """Whether `edge` is live."""
        return edge in self._edges

    def _require_vertex(self, vertex: VertexId) -> None:
        if vertex not in self._incidence:
            raise UnknownVertexError(vertex)

    def _require_edge(self, edge: EdgeId) -> None:
        if edge not in self._edges:
            raise UnknownEdgeError(edge)

    def endpoints(self, edge: EdgeId) -> tuple[VertexId, VertexId]:
        """Return the endpoint pair of an edge."""
        self._require_edge(edge)
        return self._edges[edge]

    def other_end(self, edge: EdgeId, vertex: VertexId) -> VertexId:
        """Return the endpoint of `edge` opposite `vertex`."""
        u, v = self.endpoints(edge)
        if vertex == u:
            return v
        if vertex == v:
            return u
        raise GraphError(f"Edge {edge} is not incident to vertex {vertex}")

    def kind(self, edge: EdgeId) -> EdgeKind:
        """Return the flag carried by `edge`."""
        self._require_edge(edge)
        return self._kinds.get(edge, EdgeKind.REGULAR)

    def is_fake(self, edge: EdgeId) -> bool:
        """Whether `edge` is a fake padding edge."""
        return self.kind(edge) is EdgeKind.FAKE

    def is_loop(self, edge: EdgeId) -> bool:
        """Whether `edge` is a self-loop."""
        u, v = self.endpoints(edge)
        return u == v

    def edges_of_kind(self, kind: EdgeKind) -> frozenset[EdgeId]:
        """Return all edges carrying the given flag."""
        if kind is EdgeKind.REGULAR:
            return frozenset(e for e in self._edges if e not in self._kinds)
        return frozenset(e for e, k in self._kinds.items() if k is kind)

    def incident_edges(self, vertex: VertexId) -> list[EdgeId]:
        """Return the ids of edges touching `vertex`, ascending."""
        self._require_vertex(vertex)
        return sorted(self._incidence[vertex])

    def incident_edge_count(self, vertex: VertexId) -> int:
        """Number of distinct edges touching `vertex`; a loop counts once."""
        self._require_vertex(vertex)
        return len(self._incidence[vertex])

    def degree(self, vertex: VertexId) -> int:
        """Classical degree; a loop counts twice."""
        self._require_vertex(vertex)
        return sum(
            2 if self._edges[e][0] == self._edges[e][1] else 1
            for e in self._incidence[vertex]
        )

    def loops_at(self, vertex: VertexId) -> list[EdgeId]:
        """Return the self-loops at `vertex`, ascending."""
        self._require_vertex(vertex)
        return sorted(e for e in self._incidence[vertex] if self.is_loop(e))

    def neighbors(self, vertex: VertexId) -> set[VertexId]:
        """Distinct vertices joined to `vertex` by a non-loop edge."""
        self._require_vertex(vertex)
        found = set()
        for e in self._incidence[vertex]:
            u, v = self._edges[e]
            if u != v:
                found.add(v if u == vertex else u)
        return found

    def edges_between(self, u: VertexId, v: VertexId) -> list[EdgeId]:
        """Return the parallel edges joining u and v, ascending."""
        self._require_vertex(u)
        self._require_vertex(v)
        return sorted(e for e in self._incidence[u] if set(self._edges[e]) == {u, v})

    def adjacency(self) -> dict[VertexId, list[tuple[EdgeId, VertexId]]]:
        """Loop-free adjacency lists used by the flow kernels.

        Returns:
            Map from every vertex to (edge id, far endpoint) pairs in edge-id order
        """
        adjacency: dict[VertexId, list[tuple[EdgeId, VertexId]]] = {
            v: [] for v in self._incidence
        }
        for e in sorted(self._edges):
            u, v = self._edges[e]
            if u != v:
                adjacency[u].append((e, v))
                adjacency[v].append((e, u))
        return adjacency

    # Mutation

    def add_vertex(self, vertex: Optional[VertexId] = None) -> VertexId:
        """Add a vertex, allocating an id unless one is given."""
        if vertex is None:
            vertex = self.allocator.vertex()
        elif vertex in self._incidence:
            raise GraphError(f"Vertex {vertex} already exists")
        else:
            self.allocator.observe_vertex(vertex)
        self._incidence[vertex] = {}
        return vertex

    def remove_vertex(self, vertex: VertexId) -> None:
        """Remove a vertex together with its incident edges."""
        self._require_vertex(vertex)
        for e in list(self._incidence[vertex]):
            self.remove_edge(e)
        del self._incidence[vertex]

    def add_edge(
        self,
        u: VertexId,
        v: VertexId,
        edge: Optional[EdgeId] = None,
        kind: EdgeKind = EdgeKind.REGULAR,
    ) -> EdgeId:
        """Add an edge between live vertices (u = v makes a loop).

        Args:
            u: First endpoint
            v: Second endpoint
            edge: Explicit id to use; a fresh family id is allocated if omitted
            kind: Flag for the new edge

        Returns:
            EdgeId: Id of the new edge
        """
        self._require_vertex(u)
        self._require_vertex(v)
        if edge is None:
            edge = self.allocator.edge()
        elif edge in self._edges:
            raise GraphError(f"Edge {edge} already exists")
        else:
            self.allocator.observe_edge(edge)
        self._edges[edge] = (u, v)
        self._incidence[u][edge] = None
        self._incidence[v][edge] = None
        if kind is not EdgeKind.REGULAR:
            self._kinds[edge] = kind
        return edge

    def remove_edge(self, edge: EdgeId) -> None:
        """Delete an edge; its endpoints stay."""
        self._require_edge(edge)
        u, v = self._edges.pop(edge)
        self._incidence[u].pop(edge, None)
        self._incidence[v].pop(edge, None)
        self._kinds.pop(edge, None)

    # Derived graphs

    def copy(self) -> "MultiGraph":
        """Return an independent copy in the same family."""
        clone = MultiGraph(self.allocator)
        clone._incidence = {v: dict(es) for v, es in self._incidence.items()}
        clone._edges = dict(self._edges)
        clone._kinds = dict(self._kinds)
        return clone

    def contract(self, part: Iterable[VertexId]) -> ContractionResult:
        """Contract a vertex set into a single new vertex.

        Edges inside `part` are dropped, boundary edges keep their ids with the
        part-side endpoint replaced by the new vertex.

        Args:
            part: Nonempty proper subset of the vertices

        Returns:
            ContractionResult: The contracted graph, the new vertex and the kept
            boundary edge ids
        """
        part = set(part)
        if not part:
            raise PreconditionError("Cannot contract an empty vertex set")
        for vertex in part:
            self._require_vertex(vertex)
        if len(part) == len(self._incidence):
            raise PreconditionError("Cannot contract the full vertex set")

        result = MultiGraph(self.allocator)
        for vertex in self._incidence:
            if vertex not in part:
                result._incidence[vertex] = {}
        new_vertex = result.add_vertex()
        kept = set()
        for e in sorted(self._edges):
            u, v = self._edges[e]
            inside_u, inside_v = u in part, v in part
            if inside_u and inside_v:
                continue
            if inside_u:
                u = new_vertex
                kept.add(e)
            elif inside_v:
                v = new_vertex
                kept.add(e)
            result.add_edge(u, v, edge=e, kind=self._kinds.get(e, EdgeKind.REGULAR))
        return ContractionResult(result, new_vertex, frozenset(kept))

    def subdivide(self, edge: EdgeId) -> SubdivisionResult:
        """Replace `edge` in place by a path through a new degree-2 vertex.

        Subdividing a loop at r yields two parallel edges between r and the new
        vertex.
        """
        u, v = self.endpoints(edge)
        self.remove_edge(edge)
        middle = self.add_vertex()
        first = self.add_edge(u, middle)
        second = self.add_edge(middle, v)
        return SubdivisionResult(middle, first, second)

    def edge_induced_subgraph(self, edges: Iterable[EdgeId]) -> "MultiGraph":
        """Subgraph on the given edges and their endpoints, ids preserved."""
        result = MultiGraph(self.allocator)
        for e in sorted(set(edges)):
            self._require_edge(e)
            u, v = self._edges[e]
            for vertex in (u, v):
                if vertex not in result._incidence:
                    result._incidence[vertex] = {}
            result.add_edge(u, v, edge=e, kind=self._kinds.get(e, EdgeKind.REGULAR))
        return result

    def induced_subgraph(self, vertices: Iterable[VertexId]) -> "MultiGraph":
        """Subgraph on a vertex set with every edge between its members."""
        keep = set(vertices)
        result = MultiGraph(self.allocator)
        for vertex in sorted(keep):
            self._require_vertex(vertex)
            result._incidence[vertex] = {}
        for e in sorted(self._edges):
            u, v = self._edges[e]
            if u in keep and v in keep:
                result.add_edge(
                    u, v, edge=e, kind=self._kinds.get(e, EdgeKind.REGULAR)
                )
        return result

    def to_networkx(self, simple: bool = False) -> nx.Graph:
        """Convert to networkx.

        Args:
            simple: Collapse parallel edges and drop loops, returning nx.Graph

        Returns:
            nx.MultiGraph keyed by edge id, or nx.Graph when `simple` is set
        """
        if simple:
            graph = nx.Graph()
            graph.add_nodes_from(self._incidence)
            graph.add_edges_from(
                (u, v) for u, v in self._edges.values() if u != v
            )
            return graph
        graph = nx.MultiGraph()
        graph.add_nodes_from(self._incidence)
        for e, (u, v) in self._edges.items():
            graph.add_edge(u, v, key=e)
        return graph


@dataclass(frozen=True)
class TerminalSystem:
    """Disjoint terminal groups plus a reserve set.

    Attributes:
        groups: Nonempty, pairwise disjoint vertex sets S_1..S_t
        reserve: Vertex set R, disjoint from every group
    """

    groups: tuple[frozenset[VertexId], ...]
    reserve: frozenset[VertexId] = field(default_factory=frozenset)

    def __post_init__(self):
        groups = tuple(frozenset(group) for group in self.groups)
        object.__setattr__(self, "groups", groups)
        object.__setattr__(self, "reserve", frozenset(self.reserve))

        seen: set[VertexId] = set()
        for index, group in enumerate(groups):
            if not group:
                raise TerminalSystemError("nonempty-groups", f"group {index} is empty")
            overlap = seen & group
            if overlap:
                raise TerminalSystemError(
                    "disjoint-groups",
                    f"group {index} overlaps earlier groups at {sorted(overlap)}",
                )
            seen |= group
        overlap = seen & self.reserve
        if overlap:
            raise TerminalSystemError(
                "reserve-disjoint", f"reserve meets terminals at {sorted(overlap)}"
            )

    @property
    def terminals(self) -> frozenset[VertexId]:
        """Union of all groups."""
        return frozenset().union(*self.groups)

    @property
    def group_count(self) -> int:
        return len(self.groups)

    def validate(self, graph: MultiGraph) -> None:
        """Check that every member is a live vertex of `graph`.

        Raises:
            TerminalSystemError: Naming the liveness invariant on failure
        """
        members = self.terminals | self.reserve
        missing = sorted(v for v in members if not graph.has_vertex(v))
        if missing:
            raise TerminalSystemError(
                "live-members", f"vertices {missing} are not in the graph"
            )

    def restricted_to(self, indices: Iterable[int]) -> "TerminalSystem":
        """Keep only the listed groups (in the given order)."""
        return TerminalSystem(
            tuple(self.groups[i] for i in indices), reserve=self.reserve
        )

    def merged(self) -> "TerminalSystem":
        """Single-group system on the union of all terminals."""
        return TerminalSystem((self.terminals,), reserve=self.reserve)
