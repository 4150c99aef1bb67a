"""Feasibility functional of (k,g)-families and its exhaustive audit.

For an admissible partition P = (A_1..A_l; B_p) the functional is

    f_g(P) = sum |delta(A_i)| - 2k(l - 1) - g(B_p) - 2 g(T_p)

where T_p holds the S-vertices that are alone in S within their block. A graph
carries a (k,g)-family exactly when f_g(P) >= 0 for every P, which audit_kg
checks by enumeration on small graphs.
"""

import logging
from collections import Counter
from typing import Iterable, Iterator

from forestpack.models.errors import PreconditionError
from forestpack.models.graph import EdgeId, MultiGraph, VertexId
from forestpack.models.kg_models import (
    KG_AUDIT_BOUND,
    AdmissiblePartition,
    KgAudit,
    ParityFunction,
    TreePackingHypotheses,
)
from forestpack.utils.connectivity import steiner_connectivity

logger = logging.getLogger(__name__)

OUTSIDE = -1


def make_parity_g(graph: MultiGraph, terminals: Iterable[VertexId]) -> ParityFunction:
    """g(v) = degree(v) mod 2 for v outside S, 0 on S."""
    s = frozenset(terminals)
    return ParityFunction(
        {v: 0 if v in s else graph.degree(v) % 2 for v in sorted(graph.vertices)}
    )


def _require_terminals(graph: MultiGraph, s: frozenset) -> None:
    if not s:
        raise PreconditionError("The (k,g) functional needs a nonempty S")
    missing = sorted(v for v in s if not graph.has_vertex(v))
    if missing:
        raise PreconditionError(f"Vertices {missing} are not in the graph")


def _check_admissible(
    graph: MultiGraph, s: frozenset, partition: AdmissiblePartition
) -> None:
    covered: set[VertexId] = set()
    for block in partition.blocks:
        if not block:
            raise PreconditionError("Inadmissible partition: empty block")
        if covered & block:
            raise PreconditionError("Inadmissible partition: blocks overlap")
        if not block & s:
            raise PreconditionError(
                f"Inadmissible partition: block {sorted(block)} misses S"
            )
        covered |= block
    if not s <= covered:
        raise PreconditionError("Inadmissible partition: S is not covered")
    if partition.outside != frozenset(graph.vertices) - covered:
        raise PreconditionError(
            "Inadmissible partition: outside set is not the complement of the blocks"
        )


def boundary_size(graph: MultiGraph, block: frozenset[VertexId]) -> int:
    """Number of edges with exactly one endpoint in `block`."""
    return sum(1 for u, v in graph.edges.values() if (u in block) != (v in block))


def f_g(
    graph: MultiGraph,
    terminals: Iterable[VertexId],
    pf: ParityFunction,
    partition: AdmissiblePartition,
    k: int,
) -> int:
    """Evaluate the feasibility functional on one admissible partition.

    Raises:
        PreconditionError: If the partition is not admissible
    """
    s = frozenset(terminals)
    _require_terminals(graph, s)
    _check_admissible(graph, s, partition)
    delta = sum(boundary_size(graph, block) for block in partition.blocks)
    lonely = [
        next(iter(block & s)) for block in partition.blocks if len(block & s) == 1
    ]
    return (
        delta
        - 2 * k * (len(partition.blocks) - 1)
        - pf.total(partition.outside)
        - 2 * pf.total(lonely)
    )


def _vertex_order(graph: MultiGraph, s: frozenset) -> list[VertexId]:
    return sorted(s) + sorted(v for v in graph.vertices if v not in s)


def _from_labels(order: list[VertexId], labels: list[int]) -> AdmissiblePartition:
    blocks: dict[int, set[VertexId]] = {}
    outside = []
    for vertex, label in zip(order, labels, strict=True):
        if label == OUTSIDE:
            outside.append(vertex)
        else:
            blocks.setdefault(label, set()).add(vertex)
    return AdmissiblePartition(tuple(blocks.values()), frozenset(outside))


def iter_admissible_partitions(
    graph: MultiGraph, terminals: Iterable[VertexId]
) -> Iterator[AdmissiblePartition]:
    """Yield every admissible partition exactly once.

    S-vertices get restricted-growth block labels, so each set partition of S is
    produced once; every other vertex then joins an existing block or stays
    outside.
    """
    s = frozenset(terminals)
    _require_terminals(graph, s)
    order = _vertex_order(graph, s)
    labels = [OUTSIDE] * len(order)

    def walk(i: int, blocks: int) -> Iterator[AdmissiblePartition]:
        if i == len(order):
            yield _from_labels(order, labels)
            return
        if i < len(s):
            choices = range(blocks + 1)
        else:
            choices = (OUTSIDE, *range(blocks))
        for label in choices:
            labels[i] = label
            yield from walk(i + 1, max(blocks, label + 1))

    yield from walk(0, 0)


def audit_kg(
    graph: MultiGraph,
    terminals: Iterable[VertexId],
    pf: ParityFunction,
    k: int,
    bound: int = KG_AUDIT_BOUND,
) -> KgAudit:
    """Minimize f_g over all admissible partitions.

    The enumeration builds each partition vertex by vertex, adding the boundary
    contribution of every edge once both its endpoints are placed. Branches whose
    value cannot drop to the best minimum found are cut, since later vertices can
    only lower the value through g.

    Args:
        graph: Graph to audit (loops never cross a block boundary)
        terminals: The set S
        pf: Parity function g
        k: Family size
        bound: Largest vertex count accepted

    Returns:
        KgAudit: Minimum value and the lexicographically smallest minimizer
    """
    s = frozenset(terminals)
    _require_terminals(graph, s)
    if graph.number_of_vertices() > bound:
        raise PreconditionError(
            f"Exhaustive audit is limited to {bound} vertices, "
            f"graph has {graph.number_of_vertices()}"
        )

    order = _vertex_order(graph, s)
    position = {v: i for i, v in enumerate(order)}
    multiplicity: Counter[tuple[int, int]] = Counter()
    for u, v in graph.edges.values():
        if u != v:
            multiplicity[tuple(sorted((position[u], position[v])))] += 1
    earlier: list[list[tuple[int, int]]] = [[] for _ in order]
    for (i, j), count in sorted(multiplicity.items()):
        earlier[j].append((i, count))

    weights = [pf(v) for v in order]
    remaining = [0] * (len(order) + 1)
    for i in range(len(order) - 1, len(s) - 1, -1):
        remaining[i] = remaining[i + 1] + weights[i]

    labels = [OUTSIDE] * len(order)
    best: list = [None, None]
    examined = 0

    def crossing(i: int, label: int) -> int:
        total = 0
        for j, count in earlier[i]:
            other = labels[j]
            if other != label:
                total += count if OUTSIDE in (label, other) else 2 * count
        return total

    def consider(value: int) -> None:
        if best[0] is not None and value > best[0]:
            return
        candidate = _from_labels(order, labels)
        if (
            best[0] is None
            or value < best[0]
            or candidate.sort_key() < best[1].sort_key()
        ):
            best[0], best[1] = value, candidate

    def place_rest(i: int, blocks: int, partial: int) -> None:
        nonlocal examined
        if best[0] is not None and partial - remaining[i] > best[0]:
            return
        if i == len(order):
            examined += 1
            consider(partial)
            return
        for label in (OUTSIDE, *range(blocks)):
            labels[i] = label
            cost = crossing(i, label) - (weights[i] if label == OUTSIDE else 0)
            place_rest(i + 1, blocks, partial + cost)

    def place_terminals(i: int, blocks: int, partial: int) -> None:
        if i == len(s):
            sizes = Counter(labels[: len(s)])
            lonely = sum(weights[j] for j in range(len(s)) if sizes[labels[j]] == 1)
            place_rest(i, blocks, partial - 2 * k * (blocks - 1) - 2 * lonely)
            return
        for label in range(blocks + 1):
            labels[i] = label
            place_terminals(i + 1, max(blocks, label + 1), partial + crossing(i, label))

    place_terminals(0, 0, 0)
    logger.debug(
        "(k,g) audit: min %s over %d evaluated partitions", best[0], examined
    )
    return KgAudit(min_value=best[0], argmin=best[1], examined=examined)


def check_treepacking_hypotheses(
    graph: MultiGraph,
    terminals: Iterable[VertexId],
    deleted: Iterable[EdgeId],
    k: int,
) -> TreePackingHypotheses:
    """Report which hypotheses of the tree-packing lemma the instance meets.

    Args:
        graph: The graph before deleting `deleted`
        terminals: The set S
        deleted: Edge set T removed before packing
        k: Number of S-subgraphs wanted
    """
    s = frozenset(terminals)
    deleted = frozenset(deleted)
    others = [v for v in graph.vertices if v not in s]

    connectivity = None
    if len(s) >= 2:
        connectivity = steiner_connectivity(graph, s).value
    s_connected = connectivity is None or connectivity >= 3 * k

    return TreePackingHypotheses(
        s_connected=s_connected,
        degree_three=all(graph.degree(v) == 3 for v in others),
        independent=not any(
            u not in s and v not in s for u, v in graph.edges.values()
        ),
        deleted_within_k=len(deleted) <= k,
        connectivity=connectivity,
    )


def without_edges(graph: MultiGraph, edges: Iterable[EdgeId]) -> MultiGraph:
    """Copy of `graph` with the given edges deleted."""
    result = graph.copy()
    for e in sorted(set(edges)):
        if not result.has_edge(e):
            raise PreconditionError(f"Edge {e} is not in the graph")
        result.remove_edge(e)
    return result
