"""Edge-disjoint spanning tree packing by matroid partition.

Edges are inserted one at a time into k forests. An edge that closes a cycle in
every forest triggers a breadth-first search over exchanges: an edge y reached
from x lies on the cycle x closes in some forest, and swapping them keeps that
forest acyclic. The search ends when some reached edge fits into a forest
without closing a cycle. When no exchange path exists, the edges reachable from
the unplaced edges span a vertex partition that violates the Tutte-Nash-Williams
bound.
"""

import logging
from collections import deque
from typing import Optional

import networkx as nx

from forestpack.models.errors import InternalInvariantError, PreconditionError
from forestpack.models.graph import EdgeId, MultiGraph, VertexId
from forestpack.models.packing_models import Packing, SearchVerdict, SpanningTreeResult

logger = logging.getLogger(__name__)


class _Forests:
    """k forests over a fixed vertex set with path queries."""

    def __init__(self, graph: MultiGraph, k: int):
        self.graph = graph
        self.k = k
        self.members: list[set[EdgeId]] = [set() for _ in range(k)]
        self.owner: dict[EdgeId, int] = {}

    def path(self, index: int, u: VertexId, v: VertexId) -> Optional[list[EdgeId]]:
        """Edges of the forest path from u to v, or None if disconnected."""
        if u == v:
            return []
        adjacency: dict[VertexId, list[tuple[EdgeId, VertexId]]] = {}
        for e in self.members[index]:
            a, b = self.graph.endpoints(e)
            adjacency.setdefault(a, []).append((e, b))
            adjacency.setdefault(b, []).append((e, a))
        parent: dict[VertexId, Optional[tuple[EdgeId, VertexId]]] = {u: None}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            for e, y in adjacency.get(x, ()):
                if y in parent:
                    continue
                parent[y] = (e, x)
                if y == v:
                    path = []
                    while parent[y] is not None:
                        e, y = parent[y]
                        path.append(e)
                    return path
                queue.append(y)
        return None

    def move(self, edge: EdgeId, index: int) -> None:
        old = self.owner.get(edge)
        if old is not None:
            self.members[old].discard(edge)
        self.members[index].add(edge)
        self.owner[edge] = index

    def insert(self, edge: EdgeId) -> bool:
        """Try to place `edge`, performing a chain of exchanges if needed."""
        parent: dict[EdgeId, Optional[EdgeId]] = {edge: None}
        queue = deque([edge])
        while queue:
            current = queue.popleft()
            u, v = self.graph.endpoints(current)
            for index in range(self.k):
                if self.owner.get(current) == index:
                    continue
                cycle = self.path(index, u, v)
                if cycle is None:
                    self._augment(current, index, parent)
                    return True
                for other in sorted(cycle):
                    if other not in parent:
                        parent[other] = current
                        queue.append(other)
        return False

    def _augment(self, last: EdgeId, index: int, parent: dict) -> None:
        current, target = last, index
        while current is not None:
            previous_owner = self.owner.get(current)
            self.move(current, target)
            current, target = parent[current], previous_owner

    def reachable_from(self, start: list[EdgeId]) -> set[EdgeId]:
        """Edges reachable in the exchange graph from the given unplaced edges."""
        seen = set(start)
        queue = deque(start)
        while queue:
            current = queue.popleft()
            u, v = self.graph.endpoints(current)
            for index in range(self.k):
                if self.owner.get(current) == index:
                    continue
                cycle = self.path(index, u, v) or []
                for other in cycle:
                    if other not in seen:
                        seen.add(other)
                        queue.append(other)
        return seen


def pack_spanning_trees(graph: MultiGraph, k: int) -> SpanningTreeResult:
    """Find k edge-disjoint spanning trees or a partition proving none exist.

    Args:
        graph: Connected multigraph; loops are ignored
        k: Number of trees

    Returns:
        SpanningTreeResult: FEASIBLE with k spanning trees, or INFEASIBLE with a
        vertex partition P whose crossing edges number fewer than k(|P|-1)
    """
    if k < 1:
        raise PreconditionError("Spanning tree packing needs k >= 1")
    if graph.number_of_vertices() == 0 or not nx.is_connected(
        graph.to_networkx(simple=True)
    ):
        raise PreconditionError("Spanning tree packing needs a connected graph")

    need = graph.number_of_vertices() - 1
    forests = _Forests(graph, k)
    unplaced = []
    for edge in sorted(graph.edges):
        if all(len(members) == need for members in forests.members):
            break
        if graph.is_loop(edge):
            continue
        if not forests.insert(edge):
            unplaced.append(edge)

    if all(len(members) == need for members in forests.members):
        packing = Packing(k=k, classes=[frozenset(m) for m in forests.members])
        logger.debug("Packed %d spanning trees", k)
        return SpanningTreeResult(SearchVerdict.FEASIBLE, packing=packing)

    closure = forests.reachable_from(unplaced)
    components = nx.Graph()
    components.add_nodes_from(graph.vertices)
    components.add_edges_from(graph.endpoints(e) for e in closure)
    witness = tuple(
        sorted(
            (frozenset(part) for part in nx.connected_components(components)),
            key=min,
        )
    )
    where = {v: i for i, part in enumerate(witness) for v in part}
    crossing = sum(1 for u, v in graph.edges.values() if where[u] != where[v])
    if crossing >= k * (len(witness) - 1):
        logger.critical("Spanning tree witness does not violate the bound")
        raise InternalInvariantError("Matroid partition produced an invalid witness")
    logger.debug(
        "No %d spanning trees: %d parts with %d crossing edges",
        k,
        len(witness),
        crossing,
    )
    return SpanningTreeResult(
        SearchVerdict.INFEASIBLE, witness=witness, crossing=crossing
    )
