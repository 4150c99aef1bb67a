"""Flow-based connectivity oracles for unit-capacity multigraphs.

Every edge has capacity one in either direction and parallel edges are modeled
individually. Flows augment along breadth-first shortest paths, and minimum cuts
are read off the final residual graph as the set of vertices reachable from the
source side, which makes every returned cut source-minimal and reproducible.
"""

import logging
from collections import deque
from itertools import product
from typing import Hashable, Iterable, Mapping, Optional, Sequence

import networkx as nx

from forestpack.models.cuts import (
    CutCertificate,
    FlowResult,
    PathSystem,
    SeparationResult,
)
from forestpack.models.errors import InternalInvariantError, PreconditionError
from forestpack.models.graph import EdgeId, MultiGraph, TerminalSystem, VertexId

logger = logging.getLogger(__name__)

Adjacency = Mapping[Hashable, Sequence[tuple[EdgeId, Hashable]]]


def unit_flow(
    adjacency: Adjacency,
    sources: Iterable[Hashable],
    sinks: Iterable[Hashable],
    limit: Optional[int] = None,
) -> tuple[int, Optional[set]]:
    """Run unit-capacity augmenting-path max flow between two node sets.

    The adjacency may describe any undirected multigraph whose nodes are hashable,
    which lets the packing search run flows on quotient graphs.

    Args:
        adjacency: Node to (edge id, far node) pairs; each edge listed at both ends
        sources: Nodes merged into the super-source
        sinks: Nodes merged into the super-sink; must be disjoint from sources
        limit: Stop as soon as the flow value reaches this number

    Returns:
        tuple: (flow value, source side of the residual graph). The source side is
        None when the computation stopped at `limit`.
    """
    sources = list(sources)
    sinks = set(sinks)
    tail: dict[EdgeId, Hashable] = {}
    value = 0
    if limit is not None and limit <= 0:
        return 0, None

    while True:
        parent: dict[Hashable, Optional[tuple[EdgeId, Hashable]]] = dict.fromkeys(
            sources
        )
        queue = deque(sources)
        reached = None
        while queue and reached is None:
            x = queue.popleft()
            for e, y in adjacency[x]:
                if y in parent or tail.get(e) == x:
                    continue
                parent[y] = (e, x)
                if y in sinks:
                    reached = y
                    break
                queue.append(y)

        if reached is None:
            return value, set(parent)

        y = reached
        step = parent[y]
        while step is not None:
            e, x = step
            if tail.get(e) == y:
                del tail[e]
            else:
                tail[e] = x
            y = x
            step = parent[y]
        value += 1
        if limit is not None and value >= limit:
            return value, None


def cut_certificate(graph: MultiGraph, side_a: Iterable[VertexId]) -> CutCertificate:
    """Build the certificate for a vertex bipartition of `graph`."""
    side_a = frozenset(v for v in side_a if graph.has_vertex(v))
    side_b = frozenset(v for v in graph.vertices if v not in side_a)
    crossing = frozenset(
        e for e, (u, v) in graph.edges.items() if (u in side_a) != (v in side_a)
    )
    return CutCertificate(side_a=side_a, side_b=side_b, crossing=crossing)


def _checked_result(graph: MultiGraph, value: int, side_a: set) -> FlowResult:
    cut = cut_certificate(graph, side_a)
    if cut.size != value:
        logger.critical("Flow value %d disagrees with cut size %d", value, cut.size)
        raise InternalInvariantError(
            f"Max-flow value {value} does not match min-cut size {cut.size}"
        )
    return FlowResult(value, cut)


def _require_vertices(graph: MultiGraph, vertices: Iterable[VertexId]) -> None:
    for vertex in vertices:
        if not graph.has_vertex(vertex):
            raise PreconditionError(f"Vertex {vertex} is not in the graph")


def max_flow_unit(
    graph: MultiGraph,
    s: VertexId,
    t: VertexId,
    adjacency: Optional[Adjacency] = None,
) -> FlowResult:
    """Maximum number of edge-disjoint s-t paths and a source-minimal min cut.

    Args:
        graph: Host multigraph; self-loops are ignored
        s: Source vertex
        t: Sink vertex, distinct from s
        adjacency: Precomputed `graph.adjacency()` to reuse across calls

    Returns:
        FlowResult: (value, cut) with side_a the residual reach of s
    """
    if s == t:
        raise PreconditionError("Source and sink must differ")
    _require_vertices(graph, (s, t))
    adjacency = adjacency if adjacency is not None else graph.adjacency()
    value, side_a = unit_flow(adjacency, (s,), (t,))
    return _checked_result(graph, value, side_a)


def local_connectivity_at_least(
    graph: MultiGraph,
    s: VertexId,
    t: VertexId,
    k: int,
    adjacency: Optional[Adjacency] = None,
) -> bool:
    """Whether s and t are joined by at least k edge-disjoint paths."""
    if k <= 0:
        return True
    adjacency = adjacency if adjacency is not None else graph.adjacency()
    value, _ = unit_flow(adjacency, (s,), (t,), limit=k)
    return value >= k


def steiner_connectivity(
    graph: MultiGraph, terminals: Iterable[VertexId]
) -> FlowResult:
    """Steiner edge-connectivity of a terminal set.

    Computed as the minimum of |S|-1 flows from the smallest terminal; any minimum
    Steiner cut separates that terminal from some other one.

    Args:
        graph: Host multigraph
        terminals: Terminal set S with at least two vertices

    Returns:
        FlowResult: Minimum value and the cut attaining it, ties broken by
        (value, sorted side_a)
    """
    terminals = sorted(set(terminals))
    if len(terminals) < 2:
        raise PreconditionError("Steiner connectivity needs at least two terminals")
    _require_vertices(graph, terminals)

    adjacency = graph.adjacency()
    root = terminals[0]
    best: Optional[FlowResult] = None
    for other in terminals[1:]:
        result = max_flow_unit(graph, root, other, adjacency)
        if best is None or result.cut.sort_key() < best.cut.sort_key():
            best = result
    logger.debug(
        "Steiner connectivity of %d terminals is %d", len(terminals), best.value
    )
    return best


def constrained_min_cut(
    graph: MultiGraph,
    side_a_seed: Iterable[VertexId],
    side_b_seed: Iterable[VertexId],
) -> FlowResult:
    """Minimum cut with each seed set kept on its own side.

    Args:
        graph: Host multigraph
        side_a_seed: Vertices forced onto side_a
        side_b_seed: Vertices forced onto side_b

    Returns:
        FlowResult: Value and source-minimal cut
    """
    seed_a, seed_b = set(side_a_seed), set(side_b_seed)
    if not seed_a or not seed_b:
        raise PreconditionError("Cut seeds must be nonempty")
    if seed_a & seed_b:
        raise PreconditionError(f"Cut seeds overlap at {sorted(seed_a & seed_b)}")
    _require_vertices(graph, seed_a | seed_b)
    value, side_a = unit_flow(graph.adjacency(), sorted(seed_a), seed_b)
    return _checked_result(graph, value, side_a)


def min_terminal_separating_cut(
    graph: MultiGraph, terminals: TerminalSystem
) -> SeparationResult:
    """Minimum cut that splits the groups but keeps every group intact.

    All 2^(t-1)-1 bipartitions of the group indices are tried with group 0 fixed
    on side A. Reserve vertices are not constrained.

    Args:
        graph: Host multigraph
        terminals: Terminal system with at least two groups

    Returns:
        SeparationResult: (value, cut, group_split) with ties broken by the
        lexicographically smallest group split, then the canonical cut
    """
    count = terminals.group_count
    if count < 2:
        raise PreconditionError("Separating cuts need at least two groups")
    terminals.validate(graph)

    adjacency = graph.adjacency()
    best = None
    best_key = None
    for assignment in product((True, False), repeat=count - 1):
        if all(assignment):
            continue
        on_a = (0,) + tuple(i + 1 for i, flag in enumerate(assignment) if flag)
        on_b = tuple(i + 1 for i, flag in enumerate(assignment) if not flag)
        seed_a = set().union(*(terminals.groups[i] for i in on_a))
        seed_b = set().union(*(terminals.groups[i] for i in on_b))
        value, side_a = unit_flow(adjacency, sorted(seed_a), seed_b)
        result = _checked_result(graph, value, side_a)
        key = (value, on_a, on_b, sorted(result.cut.side_a))
        if best_key is None or key < best_key:
            best_key = key
            best = SeparationResult(value, result.cut, (on_a, on_b))
    logger.debug(
        "Minimum group-separating cut %d with split %s", best.value, best.group_split
    )
    return best


def min_cost_disjoint_paths(
    graph: MultiGraph, s: VertexId, t: VertexId, count: int
) -> PathSystem:
    """Edge-disjoint s-t paths of minimum total length.

    Solves a unit-cost min-cost flow with networkx and decomposes the acyclic
    optimal flow into simple paths, always following the smallest edge id.

    Args:
        graph: Host multigraph
        s: Source vertex
        t: Sink vertex
        count: Number of paths required

    Returns:
        PathSystem: `count` simple paths from s ending at t
    """
    if s == t:
        raise PreconditionError("Source and sink must differ")
    _require_vertices(graph, (s, t))
    if count < 0:
        raise PreconditionError("Path count must be nonnegative")
    if not local_connectivity_at_least(graph, s, t, count):
        raise PreconditionError(
            f"Vertices {s} and {t} are joined by fewer than {count} disjoint paths"
        )
    system = PathSystem(source=s)
    if count == 0:
        return system

    network = nx.MultiDiGraph()
    network.add_nodes_from(graph.vertices)
    network.nodes[s]["demand"] = -count
    network.nodes[t]["demand"] = count
    for e, (u, v) in graph.edges.items():
        if u != v:
            network.add_edge(u, v, key=e, capacity=1, weight=1)
            network.add_edge(v, u, key=e, capacity=1, weight=1)
    flow = nx.min_cost_flow(network)

    outgoing: dict[VertexId, list[tuple[EdgeId, VertexId]]] = {}
    used: dict[EdgeId, int] = {}
    for u, targets in flow.items():
        for v, keyed in targets.items():
            for e, amount in keyed.items():
                if amount:
                    outgoing.setdefault(u, []).append((e, v))
                    used[e] = used.get(e, 0) + 1
    for arcs in outgoing.values():
        arcs.sort(reverse=True)
    if any(times > 1 for times in used.values()):
        raise InternalInvariantError("Min-cost flow used an edge in both directions")

    for _ in range(count):
        current, path, seen = s, [], {s}
        while current != t:
            e, nxt = outgoing[current].pop()
            path.append(e)
            if nxt in seen:
                raise InternalInvariantError("Min-cost flow decomposition revisits")
            seen.add(nxt)
            current = nxt
        system.paths.append(tuple(path))
        system.ends.append(t)
    return system


def trace_walk(
    graph: MultiGraph, source: VertexId, path: Sequence[EdgeId]
) -> Optional[VertexId]:
    """Follow an edge sequence from `source`.

    Returns:
        The end vertex, or None if the sequence is not a walk in `graph`
    """
    current = source
    for e in path:
        if not graph.has_edge(e):
            return None
        u, v = graph.endpoints(e)
        if current == u:
            current = v
        elif current == v:
            current = u
        else:
            return None
    return current


def _system_ends(graph: MultiGraph, system: PathSystem) -> Optional[list[VertexId]]:
    used: set[EdgeId] = set()
    ends = []
    for path, declared in zip(system.paths, system.ends, strict=True):
        if len(set(path)) != len(path) or used.intersection(path):
            return None
        used.update(path)
        end = trace_walk(graph, system.source, path)
        if end is None or end != declared:
            return None
        ends.append(end)
    return ends


def verify_common_paths(
    graph: MultiGraph,
    v1: VertexId,
    v2: VertexId,
    sys1: PathSystem,
    sys2: PathSystem,
    pairing: Mapping[int, int],
) -> bool:
    """Check that two path systems form common paths between v1 and v2.

    Args:
        graph: Host multigraph
        v1: Source of `sys1`
        v2: Source of `sys2`
        sys1: Paths leaving v1
        sys2: Paths leaving v2
        pairing: Bijection from path indices of sys1 to path indices of sys2

    Returns:
        bool: True iff both systems are internally edge-disjoint walks and every
        paired couple ends at the same vertex
    """
    if len(sys1) != len(sys2):
        raise PreconditionError(
            f"Path systems differ in size ({len(sys1)} vs {len(sys2)})"
        )
    if sys1.source != v1 or sys2.source != v2:
        raise PreconditionError("Path systems must start at v1 and v2")

    size = len(sys1)
    if sorted(pairing) != list(range(size)) or sorted(pairing.values()) != list(
        range(size)
    ):
        return False
    ends1 = _system_ends(graph, sys1)
    ends2 = _system_ends(graph, sys2)
    if ends1 is None or ends2 is None:
        return False
    return all(ends1[i] == ends2[j] for i, j in pairing.items())


def common_paths_lower_bound(size: int) -> int:
    """Edge-disjoint v1-v2 paths guaranteed by verified common paths of odd size."""
    if size < 1 or size % 2 == 0:
        raise PreconditionError("Common path systems must have odd size 2λ+1")
    return (size - 1) // 2 + 1


def is_cut_vertex(graph: MultiGraph, vertex: VertexId) -> bool:
    """Whether removing `vertex` disconnects two of its neighbors.

    Self-loops never make a vertex a cut vertex. A vertex absent from the graph is
    not a cut vertex.
    """
    if not graph.has_vertex(vertex):
        return False
    neighbors = graph.neighbors(vertex)
    if len(neighbors) < 2:
        return False
    simple = graph.to_networkx(simple=True)
    simple.remove_node(vertex)
    component = nx.node_connected_component(simple, min(neighbors))
    return not neighbors <= component
