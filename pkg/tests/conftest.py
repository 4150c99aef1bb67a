"""Shared test fixtures and configuration."""

from itertools import combinations, product
from typing import Iterable, Optional

import networkx as nx
import pytest
from click.testing import CliRunner
from networkx.utils import UnionFind

from forestpack.models.graph import MultiGraph, TerminalSystem, VertexId
from forestpack.models.packing_models import EdgeSubpartition

SMALL_FILE = """mg 4
# square with a diagonal and a reserve vertex
e 0 0 1
e 1 1 2
e 2 2 3
e 3 3 0
e 4 0 2
S 0 0
S 0 2
R 3
"""


@pytest.fixture
def cli_runner():
    """Create a Click CLI test runner with a wide terminal."""
    return CliRunner(env={"COLUMNS": "200"})


def build_graph(n: int, edges: list[tuple[int, int]]) -> MultiGraph:
    """Graph on vertices 0..n-1 whose edge ids follow the list order."""
    graph = MultiGraph()
    for _ in range(n):
        graph.add_vertex()
    for u, v in edges:
        graph.add_edge(u, v)
    return graph


@pytest.fixture
def make_graph():
    """Factory for graphs on 0..n-1 with edge ids in list order."""
    return build_graph


@pytest.fixture
def triangle():
    """Triangle on 0, 1, 2 with edges 0-1 (0), 1-2 (1), 0-2 (2)."""
    return build_graph(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def k4():
    """Complete graph on four vertices."""
    return build_graph(4, list(combinations(range(4), 2)))


@pytest.fixture
def graph_file(tmp_path):
    """Write graph file text to a temporary file and return its path."""

    def write(text: str = SMALL_FILE, name: str = "graph.mg"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write


def _connects(graph: MultiGraph, edges, group) -> bool:
    if len(group) < 2:
        return True
    components = UnionFind(graph.vertices)
    for e in edges:
        components.union(*graph.endpoints(e))
    anchor = components[min(group)]
    return all(components[v] == anchor for v in group)


def _keeps_vertex_whole(graph: MultiGraph, edges, at) -> bool:
    """Whether `at` is not a cut vertex of the subgraph on `edges`."""
    simple = nx.Graph()
    simple.add_edges_from(graph.endpoints(e) for e in edges)
    if at not in simple:
        return True
    neighbors = set(simple[at]) - {at}
    simple.remove_node(at)
    if len(neighbors) < 2:
        return True
    return any(neighbors <= part for part in nx.connected_components(simple))


def _balanced(graph: MultiGraph, classes, vertex) -> bool:
    used = [sum(vertex in graph.endpoints(e) for e in cls) for cls in classes]
    return sum(max(2, count) for count in used) <= graph.incident_edge_count(vertex)


def _masks_packable(graph: MultiGraph, terminals: TerminalSystem, k: int) -> bool:
    """Enumerate the edge subsets taken by classes 1..k-1.

    Connectivity is monotone, so the last class may take every edge left over.
    """
    edges = sorted(graph.edges)
    connects = {}

    def connecting(mask: int) -> bool:
        if mask not in connects:
            chosen = [e for i, e in enumerate(edges) if mask >> i & 1]
            connects[mask] = all(
                _connects(graph, chosen, group) for group in terminals.groups
            )
        return connects[mask]

    def packs(free: int, left: int) -> bool:
        if left == 1:
            return connecting(free)
        sub = free
        while True:
            if connecting(sub) and packs(free & ~sub, left - 1):
                return True
            if sub == 0:
                return False
            sub = (sub - 1) & free

    return packs((1 << len(edges)) - 1, k)


def naive_packable(
    graph: MultiGraph,
    terminals: TerminalSystem,
    k: int,
    extend: Optional[EdgeSubpartition] = None,
    balance: Iterable[VertexId] = (),
) -> bool:
    """Try every assignment of edges to classes 0..k (k = unused).

    Without extension or balance constraints the enumeration runs over edge
    subsets instead, which decides the same question.
    """
    balance = sorted(set(balance))
    if extend is None and not balance:
        return _masks_packable(graph, terminals, k)
    edges = sorted(graph.edges)
    for labels in product(range(k + 1), repeat=len(edges)):
        classes = [
            [e for e, label in zip(edges, labels) if label == i] for i in range(k)
        ]
        if not all(
            _connects(graph, cls, group)
            for cls in classes
            for group in terminals.groups
        ):
            continue
        if extend is not None and not all(
            extend.part(i + 1) <= set(cls)
            and _keeps_vertex_whole(graph, cls, extend.at)
            for i, cls in enumerate(classes)
        ):
            continue
        if all(_balanced(graph, classes, vertex) for vertex in balance):
            return True
    return False


@pytest.fixture
def naive_packer():
    """Full-enumeration packing oracle."""
    return naive_packable
