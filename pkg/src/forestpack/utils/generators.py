"""Seeded random instance generators for sweeps and property suites."""

import logging
import random
from itertools import combinations
from typing import NamedTuple

from forestpack.models.errors import PreconditionError
from forestpack.models.graph import EdgeId, MultiGraph, TerminalSystem, VertexId
from forestpack.utils.connectivity import steiner_connectivity

logger = logging.getLogger(__name__)

MAX_RETRIES = 50


class GeneratedInstance(NamedTuple):
    """A random graph with terminal groups."""

    graph: MultiGraph
    terminals: TerminalSystem
    attempts: int
    met_target: bool


class TreePackingInstance(NamedTuple):
    """An instance shaped for the tree-packing lemma."""

    graph: MultiGraph
    terminals: frozenset[VertexId]
    deleted: frozenset[EdgeId]


def random_multigraph(n: int, m: int, rng: random.Random) -> MultiGraph:
    """Loopless multigraph on vertices 0..n-1 with m edges drawn uniformly.

    Each edge picks its vertex pair independently, so multiplicities follow a
    multinomial distribution over the pairs.
    """
    if n < 2 and m > 0:
        raise PreconditionError("Edges need at least two vertices")
    graph = MultiGraph()
    for _ in range(n):
        graph.add_vertex()
    pairs = list(combinations(range(n), 2))
    for _ in range(m):
        graph.add_edge(*rng.choice(pairs))
    return graph


def group_connectivities(graph: MultiGraph, terminals: TerminalSystem) -> list[int]:
    """Steiner connectivity of every group with at least two vertices."""
    return [
        steiner_connectivity(graph, group).value
        for group in terminals.groups
        if len(group) >= 2
    ]


def random_instance(
    n: int,
    t: int,
    density: float,
    seed: int,
    target: int = 0,
    retries: int = MAX_RETRIES,
) -> GeneratedInstance:
    """Random multigraph with t disjoint groups of at least two vertices.

    Draws are repeated until every group reaches `target` Steiner connectivity,
    up to `retries` attempts; the last draw is returned either way.

    Args:
        n: Vertex count
        t: Number of groups
        density: Expected multiplicity per vertex pair
        seed: Seed for the draw
        target: Steiner connectivity every group should reach
        retries: Attempts before giving up on the target
    """
    if t < 1 or 2 * t > n:
        raise PreconditionError(f"Cannot place {t} groups of two on {n} vertices")
    rng = random.Random(seed)
    m = max(1, round(density * n * (n - 1) / 2))
    for attempt in range(1, retries + 1):
        graph = random_multigraph(n, m, rng)
        order = rng.sample(range(n), n)
        sizes = [2] * t
        for _ in range(rng.randint(0, n - 2 * t)):
            sizes[rng.randrange(t)] += 1
        groups, start = [], 0
        for size in sizes:
            groups.append(frozenset(order[start : start + size]))
            start += size
        terminals = TerminalSystem(tuple(groups))
        if min(group_connectivities(graph, terminals)) >= target:
            return GeneratedInstance(graph, terminals, attempt, True)
    logger.info("Connectivity target %d not met after %d draws", target, retries)
    return GeneratedInstance(graph, terminals, retries, False)


def edge_connected_multigraph(
    n: int, k: int, rng: random.Random, extra: int = 0
) -> MultiGraph:
    """Random multigraph on n vertices that is at least k-edge-connected.

    Starts from `extra` uniform edges, then adds edges across a minimum cut
    until the global edge connectivity reaches k.
    """
    graph = random_multigraph(n, extra, rng)
    if n < 2:
        return graph
    everyone = sorted(graph.vertices)
    while True:
        result = steiner_connectivity(graph, everyone)
        if result.value >= k:
            return graph
        u = rng.choice(sorted(result.cut.side_a))
        v = rng.choice(sorted(result.cut.side_b))
        graph.add_edge(u, v)


def treepacking_instance(
    s_size: int,
    others: int,
    k: int,
    seed: int,
) -> TreePackingInstance:
    """Instance meeting the tree-packing lemma's hypotheses.

    Vertices outside S have exactly three edges, all into S. S-S edges are then
    added across minimum cuts until S is 3k-edge-connected, and at most k S-S
    edges are chosen as the deleted set T.

    Args:
        s_size: Size of S, at least 2
        others: Number of vertices outside S
        k: Family size
        seed: Seed for every choice
    """
    if s_size < 2:
        raise PreconditionError("S needs at least two vertices")
    rng = random.Random(seed)
    graph = MultiGraph()
    s = [graph.add_vertex() for _ in range(s_size)]
    for _ in range(others):
        w = graph.add_vertex()
        for _ in range(3):
            graph.add_edge(w, rng.choice(s))

    s_set = frozenset(s)
    while True:
        result = steiner_connectivity(graph, s_set)
        if result.value >= 3 * k:
            break
        u = rng.choice(sorted(result.cut.side_a & s_set))
        v = rng.choice(sorted(result.cut.side_b & s_set))
        graph.add_edge(u, v)

    inside = sorted(
        e for e, (u, v) in graph.edges.items() if u in s_set and v in s_set and u != v
    )
    deleted = frozenset(rng.sample(inside, min(len(inside), rng.randint(0, k))))
    return TreePackingInstance(graph, s_set, deleted)

