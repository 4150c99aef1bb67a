"""Graph surgeries: splitting off, suppression, fake edges and loop bookkeeping.

Every surgery returns a fresh graph in the same id family together with a record
of what changed, so packings found on the result can be mapped back.
"""

import logging
from itertools import combinations
from typing import Iterable

from forestpack.models.errors import InternalInvariantError, PreconditionError
from forestpack.models.graph import EdgeId, EdgeKind, MultiGraph, VertexId
from forestpack.models.packing_models import Packing, PackingMeta
from forestpack.models.transform_models import (
    FakeEdgeRecord,
    LoopRecord,
    SplitRecord,
    SuppressRecord,
)
from forestpack.utils.connectivity import is_cut_vertex, unit_flow

logger = logging.getLogger(__name__)

# Placeholder id for the candidate edge yz while a split is being tested
_CANDIDATE = ("split-candidate",)


def mader_split(graph: MultiGraph, x: VertexId) -> tuple[MultiGraph, SplitRecord]:
    """Split off a pair of edges at x preserving local edge-connectivity.

    Candidate neighbor pairs (y, z) are scanned in lexicographic order; for each
    one the split graph is checked against the original with flows between every
    pair of vertices other than x.

    Args:
        graph: Loopless multigraph
        x: Vertex with degree >= 4, at least two neighbors, not a cut vertex

    Returns:
        tuple: (split graph, SplitRecord)

    Raises:
        PreconditionError: If the hypotheses on graph or x do not hold
        InternalInvariantError: If no admissible pair exists
    """
    if not graph.has_vertex(x):
        raise PreconditionError(f"Vertex {x} is not in the graph")
    if any(u == v for u, v in graph.edges.values()):
        raise PreconditionError("Splitting off requires a loopless graph")
    if graph.degree(x) < 4:
        raise PreconditionError(f"Vertex {x} has degree {graph.degree(x)} < 4")
    neighbors = sorted(graph.neighbors(x))
    if len(neighbors) < 2:
        raise PreconditionError(f"Vertex {x} has fewer than two neighbors")
    if is_cut_vertex(graph, x):
        raise PreconditionError(f"Vertex {x} is a cut vertex")

    adjacency = graph.adjacency()
    others = sorted(v for v in graph.vertices if v != x)
    pairs = list(combinations(others, 2))
    baseline = {(a, b): unit_flow(adjacency, (a,), (b,))[0] for a, b in pairs}

    for y, z in combinations(neighbors, 2):
        first = graph.edges_between(x, y)[0]
        second = graph.edges_between(x, z)[0]
        candidate = {
            v: [(e, w) for e, w in arcs if e not in (first, second)]
            for v, arcs in adjacency.items()
        }
        candidate[y].append((_CANDIDATE, z))
        candidate[z].append((_CANDIDATE, y))
        if all(
            unit_flow(candidate, (a,), (b,), limit=need)[0] >= need
            for (a, b), need in baseline.items()
        ):
            result = graph.copy()
            result.remove_edge(first)
            result.remove_edge(second)
            added = result.add_edge(y, z)
            logger.debug("Split off %d-%d and %d-%d at %d", x, y, x, z, x)
            return result, SplitRecord(x, (first, second), added, (y, z))

    logger.critical("No admissible splitting pair at vertex %d", x)
    raise InternalInvariantError(
        f"No admissible splitting pair at vertex {x}; contradicts splitting-off lemma"
    )


def suppress_degree2(
    graph: MultiGraph, u: VertexId
) -> tuple[MultiGraph, SuppressRecord]:
    """Replace a degree-2 vertex and its two edges by one edge x1-x2.

    Returns:
        tuple: (graph without u, SuppressRecord mapping the new edge back)
    """
    if not graph.has_vertex(u):
        raise PreconditionError(f"Vertex {u} is not in the graph")
    if graph.loops_at(u):
        raise PreconditionError(f"Vertex {u} carries a loop")
    if graph.degree(u) != 2:
        raise PreconditionError(f"Vertex {u} has degree {graph.degree(u)}, not 2")
    first, second = graph.incident_edges(u)
    x1, x2 = graph.other_end(first, u), graph.other_end(second, u)
    if x1 == x2:
        raise PreconditionError(f"Both edges at {u} lead to the same neighbor")

    result = graph.copy()
    result.remove_vertex(u)
    new_edge = result.add_edge(x1, x2)
    return result, SuppressRecord(u, (first, second), new_edge, (x1, x2))


def suppress_all_degree2(
    graph: MultiGraph, candidates: Iterable[VertexId]
) -> tuple[MultiGraph, list[SuppressRecord]]:
    """Suppress eligible degree-2 vertices in ascending id order.

    A candidate is skipped when, at its turn, it no longer has degree 2 with two
    distinct neighbors and no loop.
    """
    records = []
    for u in sorted(set(candidates)):
        if not graph.has_vertex(u) or graph.loops_at(u) or graph.degree(u) != 2:
            continue
        if len(graph.neighbors(u)) != 2:
            continue
        graph, record = suppress_degree2(graph, u)
        records.append(record)
    return graph, records


def expand_suppressed(edges: Iterable[EdgeId], record: SuppressRecord) -> frozenset:
    """Rewrite an edge set that uses a suppressed edge into the two originals."""
    edges = frozenset(edges)
    if record.new_edge not in edges:
        return edges
    return (edges - {record.new_edge}) | frozenset(record.replaced)


def add_fake_edges(
    graph: MultiGraph, v: VertexId, target: int, anchor: VertexId
) -> tuple[MultiGraph, FakeEdgeRecord]:
    """Pad v with flagged parallel edges to `anchor` until it meets `target`.

    Returns:
        tuple: (padded graph, FakeEdgeRecord listing the new edges)
    """
    for vertex in (v, anchor):
        if not graph.has_vertex(vertex):
            raise PreconditionError(f"Vertex {vertex} is not in the graph")
    if anchor == v:
        raise PreconditionError("Fake edges need an anchor distinct from v")
    current = graph.incident_edge_count(v)
    if current > target:
        raise PreconditionError(
            f"Vertex {v} already has {current} incident edges, above target {target}"
        )
    result = graph.copy()
    edge_ids = frozenset(
        result.add_edge(v, anchor, kind=EdgeKind.FAKE) for _ in range(target - current)
    )
    return result, FakeEdgeRecord(at=v, anchor=anchor, edge_ids=edge_ids)


def without_fake_edges(edges: Iterable[EdgeId], record: FakeEdgeRecord) -> frozenset:
    """Drop the edges of a FakeEdgeRecord from an edge set."""
    return frozenset(edges) - record.edge_ids


def strip_fake_edges(packing: Packing, record: FakeEdgeRecord) -> Packing:
    """Remove the recorded fake edges from every class of a packing.

    The fake edges that were actually used are kept in the packing metadata.
    """
    used = packing.used_edges & record.edge_ids
    return Packing(
        packing.k,
        [without_fake_edges(edges, record) for edges in packing.classes],
        extended_at=packing.extended_at,
        meta=PackingMeta(
            balanced=packing.meta.balanced,
            fake_edges_used=packing.meta.fake_edges_used | used,
        ),
    )


def loop_for_edge(
    graph: MultiGraph, e: EdgeId, reserve: Iterable[VertexId]
) -> tuple[MultiGraph, LoopRecord]:
    """Delete an edge, adding a flagged loop at each endpoint in the reserve set.

    The incident edge count of every reserve endpoint is unchanged.
    """
    if not graph.has_edge(e):
        raise PreconditionError(f"Edge {e} is not in the graph")
    reserve = set(reserve)
    u, v = graph.endpoints(e)
    result = graph.copy()
    result.remove_edge(e)
    loops = tuple(
        (w, result.add_edge(w, w, kind=EdgeKind.LOOP))
        for w in dict.fromkeys((u, v))
        if w in reserve
    )
    return result, LoopRecord(edge=e, endpoints=(u, v), loops=loops)


def restore_loop_edge(graph: MultiGraph, record: LoopRecord) -> MultiGraph:
    """Undo loop_for_edge: drop the loops and put the original edge back."""
    result = graph.copy()
    for _, loop in record.loops:
        if result.has_edge(loop):
            result.remove_edge(loop)
    result.add_edge(*record.endpoints, edge=record.edge)
    return result


def edge_union(
    base: MultiGraph, first: Iterable[EdgeId], second: Iterable[EdgeId]
) -> MultiGraph:
    """Subgraph of `base` induced by the union of two edge sets.

    Both sets come from graphs derived from `base` by contraction, so their ids
    are ids of `base`.
    """
    return base.edge_induced_subgraph(set(first) | set(second))
