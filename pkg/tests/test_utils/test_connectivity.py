"""Tests for the flow and cut oracles."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forestpack.models.cuts import PathSystem
from forestpack.models.errors import PreconditionError
from forestpack.models.graph import MultiGraph, TerminalSystem
from forestpack.utils.connectivity import (
    common_paths_lower_bound,
    constrained_min_cut,
    is_cut_vertex,
    local_connectivity_at_least,
    max_flow_unit,
    min_cost_disjoint_paths,
    min_terminal_separating_cut,
    steiner_connectivity,
    trace_walk,
    unit_flow,
    verify_common_paths,
)
from forestpack.utils.generators import random_multigraph


def test_parallel_edges_flow(make_graph):
    """Test two parallel s-t edges."""
    result = max_flow_unit(make_graph(2, [(0, 1), (0, 1)]), 0, 1)
    assert result.value == 2
    assert result.cut.crossing == frozenset({0, 1})


def test_k4_flow(k4):
    """Test that every pair of K4 is 3-connected."""
    for s, t in [(0, 1), (1, 3), (2, 3)]:
        assert max_flow_unit(k4, s, t).value == 3


def test_flow_source_side_is_residual_reach(make_graph):
    """Test the source-minimal cut on a path with a doubled middle edge."""
    graph = make_graph(3, [(0, 1), (1, 2), (1, 2)])
    result = max_flow_unit(graph, 0, 2)
    assert result.value == 1
    assert result.cut.side_a == frozenset({0})


def test_flow_preconditions(triangle):
    """Test s = t and unknown vertices."""
    with pytest.raises(PreconditionError):
        max_flow_unit(triangle, 1, 1)
    with pytest.raises(PreconditionError):
        max_flow_unit(triangle, 0, 9)


def test_flow_ignores_loops(make_graph):
    """Test that loops never carry flow."""
    graph = make_graph(2, [(0, 0), (0, 1), (1, 1)])
    assert max_flow_unit(graph, 0, 1).value == 1


def test_unit_flow_limit_stops_early(k4):
    """Test the early exit."""
    value, side = unit_flow(k4.adjacency(), (0,), (1,), limit=2)
    assert value == 2
    assert side is None
    assert local_connectivity_at_least(k4, 0, 1, 3)
    assert not local_connectivity_at_least(k4, 0, 1, 4)


def test_steiner_connectivity_examples(make_graph):
    """Test the 4-cycle and a path."""
    cycle = make_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert steiner_connectivity(cycle, [0, 1, 2, 3]).value == 2
    path = make_graph(3, [(0, 1), (1, 2)])
    assert steiner_connectivity(path, [0, 2]).value == 1


def test_steiner_connectivity_needs_two_terminals(triangle):
    """Test the |S| >= 2 precondition."""
    with pytest.raises(PreconditionError):
        steiner_connectivity(triangle, [0])


def _brute_steiner_cut(graph, terminals) -> int:
    vertices = sorted(graph.vertices)
    terminals = set(terminals)
    best = None
    for mask in range(1, 2 ** (len(vertices) - 1)):
        side = {v for i, v in enumerate(vertices) if mask >> i & 1}
        if not terminals & side or terminals <= side:
            continue
        size = sum(1 for u, v in graph.edges.values() if (u in side) != (v in side))
        best = size if best is None else min(best, size)
    return best


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=2, max_value=6),
    st.integers(min_value=0, max_value=14),
    st.integers(min_value=0, max_value=10_000),
)
def test_steiner_connectivity_matches_bipartition_oracle(n, m, seed):
    """Test the flow value against exhaustive bipartitions."""
    rng = random.Random(seed)
    graph = random_multigraph(n, m, rng)
    terminals = rng.sample(range(n), rng.randint(2, n))
    result = steiner_connectivity(graph, terminals)
    assert result.value == _brute_steiner_cut(graph, terminals)
    assert result.cut.size == result.value
    assert result.cut.side_a & set(terminals)
    assert result.cut.side_b & set(terminals)


def test_constrained_cut_degenerate_seeds(k4):
    """Test that singleton seeds give the plain flow."""
    assert constrained_min_cut(k4, {0}, {3}).value == max_flow_unit(k4, 0, 3).value


def test_constrained_cut_star(make_graph):
    """Test separating a star center from its leaves."""
    star = make_graph(5, [(0, 1), (0, 2), (0, 3), (0, 4)])
    assert constrained_min_cut(star, {0}, {1, 2, 3, 4}).value == 4


def test_constrained_cut_seed_preconditions(triangle):
    """Test empty and overlapping seeds."""
    with pytest.raises(PreconditionError):
        constrained_min_cut(triangle, set(), {1})
    with pytest.raises(PreconditionError):
        constrained_min_cut(triangle, {0, 1}, {1})


def test_separating_cut_bridge(make_graph):
    """Test two groups joined by a single bridge."""
    graph = make_graph(4, [(0, 1), (0, 1), (2, 3), (2, 3), (1, 2)])
    ts = TerminalSystem((frozenset({0, 1}), frozenset({2, 3})))
    result = min_terminal_separating_cut(graph, ts)
    assert result.value == 1
    assert result.cut.crossing == frozenset({4})
    assert result.group_split == ((0,), (1,))


def test_separating_cut_three_groups(make_graph):
    """Test three groups pairwise joined by one edge."""
    inner = [(0, 1)] * 3 + [(2, 3)] * 3 + [(4, 5)] * 3
    graph = make_graph(6, inner + [(1, 2), (3, 4), (5, 0)])
    ts = TerminalSystem(
        (frozenset({0, 1}), frozenset({2, 3}), frozenset({4, 5}))
    )
    result = min_terminal_separating_cut(graph, ts)
    assert result.value == 2
    assert result.group_split == ((0,), (1, 2))


def test_separating_cut_needs_two_groups(triangle):
    """Test the t >= 2 precondition."""
    with pytest.raises(PreconditionError):
        min_terminal_separating_cut(triangle, TerminalSystem((frozenset({0, 1}),)))


def test_separating_cut_keeps_groups_whole(make_graph):
    """Test that a cheap cut splitting a group is not chosen."""
    graph = make_graph(4, [(0, 1), (1, 2), (1, 2), (2, 3), (2, 3)])
    ts = TerminalSystem((frozenset({0, 1}), frozenset({2, 3})))
    result = min_terminal_separating_cut(graph, ts)
    assert result.value == 2
    assert {0, 1} <= result.cut.side_a


def test_min_cost_paths_shortest(make_graph):
    """Test one path when the shortest s-t distance is 3."""
    graph = make_graph(6, [(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 2), (3, 5)])
    system = min_cost_disjoint_paths(graph, 0, 3, 1)
    assert system.total_length == 3
    assert trace_walk(graph, 0, system.paths[0]) == 3


def test_min_cost_paths_forced(make_graph):
    """Test two disjoint paths of lengths 2 and 4."""
    graph = make_graph(6, [(0, 1), (1, 5), (0, 2), (2, 3), (3, 4), (4, 5)])
    system = min_cost_disjoint_paths(graph, 0, 5, 2)
    assert system.total_length == 6
    assert sorted(len(path) for path in system.paths) == [2, 4]
    assert system.ends == [5, 5]


def test_min_cost_paths_needs_connectivity(make_graph):
    """Test that too many requested paths is a precondition error."""
    graph = make_graph(2, [(0, 1)])
    with pytest.raises(PreconditionError):
        min_cost_disjoint_paths(graph, 0, 1, 2)
    assert len(min_cost_disjoint_paths(graph, 0, 1, 0)) == 0


def _simple_paths(graph, s, t) -> list[tuple[int, ...]]:
    """Every simple s-t path as a tuple of edge ids."""
    paths = []

    def walk(vertex, seen, path):
        if vertex == t:
            paths.append(tuple(path))
            return
        for e in graph.incident_edges(vertex):
            if graph.is_loop(e):
                continue
            far = graph.other_end(e, vertex)
            if far not in seen:
                walk(far, seen | {far}, path + [e])

    walk(s, {s}, [])
    return paths


def _cheapest_disjoint(paths, count: int) -> int:
    """Smallest total length of `count` pairwise edge-disjoint paths."""
    best = None

    def choose(start, used, total, left):
        nonlocal best
        if left == 0:
            best = total if best is None else min(best, total)
            return
        for i in range(start, len(paths)):
            if used.isdisjoint(paths[i]):
                choose(i + 1, used | set(paths[i]), total + len(paths[i]), left - 1)

    choose(0, frozenset(), 0, count)
    return best


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=2, max_value=6),
    st.integers(min_value=1, max_value=9),
    st.integers(min_value=0, max_value=10_000),
)
def test_min_cost_paths_match_path_enumeration(n, m, seed):
    """Test total length against every tuple of edge-disjoint simple paths."""
    rng = random.Random(seed)
    graph = random_multigraph(n, m, rng)
    s, t = rng.sample(range(n), 2)
    count = min(3, max_flow_unit(graph, s, t).value)
    system = min_cost_disjoint_paths(graph, s, t, count)
    assert len(system) == count
    for path in system.paths:
        walk = [s]
        for e in path:
            walk.append(graph.other_end(e, walk[-1]))
        assert walk[-1] == t
        assert len(set(walk)) == len(walk)
    used = [e for path in system.paths for e in path]
    assert len(used) == len(set(used))
    assert system.total_length == _cheapest_disjoint(
        _simple_paths(graph, s, t), count
    )


def test_cuts_are_repeatable():
    """Test that repeated runs and copies give identical certificates."""
    rng = random.Random(9)
    for _ in range(20):
        graph = random_multigraph(7, rng.randint(6, 16), rng)
        order = rng.sample(range(7), 7)
        groups = TerminalSystem((frozenset(order[:2]), frozenset(order[2:5])))
        terminals = order[:4]
        first = steiner_connectivity(graph, terminals)
        assert steiner_connectivity(graph, terminals) == first
        assert steiner_connectivity(graph.copy(), terminals) == first
        seeds = ({order[0]}, {order[5], order[6]})
        assert constrained_min_cut(graph, *seeds) == constrained_min_cut(
            graph.copy(), *seeds
        )
        separation = min_terminal_separating_cut(graph, groups)
        assert min_terminal_separating_cut(graph, groups) == separation



def test_common_paths_shared_neighbor(make_graph):
    """Test a single pair of paths meeting at w."""
    graph = make_graph(3, [(0, 2), (1, 2)])
    sys1 = PathSystem(0, [(0,)], [2])
    sys2 = PathSystem(1, [(1,)], [2])
    assert verify_common_paths(graph, 0, 1, sys1, sys2, {0: 0})


def test_common_paths_empty_path(make_graph):
    """Test an empty path at v1 paired with a path from v2 to v1."""
    graph = make_graph(2, [(0, 1)])
    sys1 = PathSystem(0, [()], [0])
    sys2 = PathSystem(1, [(0,)], [0])
    assert verify_common_paths(graph, 0, 1, sys1, sys2, {0: 0})


def test_common_paths_different_ends(make_graph):
    """Test paired paths that end apart."""
    graph = make_graph(4, [(0, 2), (1, 3)])
    sys1 = PathSystem(0, [(0,)], [2])
    sys2 = PathSystem(1, [(1,)], [3])
    assert not verify_common_paths(graph, 0, 1, sys1, sys2, {0: 0})


def test_common_paths_size_mismatch(make_graph):
    """Test systems of different sizes."""
    graph = make_graph(3, [(0, 2), (1, 2)])
    with pytest.raises(PreconditionError):
        verify_common_paths(
            graph, 0, 1, PathSystem(0, [(0,)], [2]), PathSystem(1), {}
        )


def test_common_paths_lower_bound():
    """Test the guaranteed connectivity of verified systems."""
    assert common_paths_lower_bound(1) == 1
    assert common_paths_lower_bound(7) == 4
    with pytest.raises(PreconditionError):
        common_paths_lower_bound(4)


def _common_paths_instance(lam: int, rng: random.Random):
    graph = MultiGraph()
    v1, v2 = graph.add_vertex(), graph.add_vertex()
    pool = [graph.add_vertex() for _ in range(rng.randint(1, 2 * lam + 1))]

    def path_to(source, end):
        length = rng.randint(1, 3)
        current, edges = source, []
        for _ in range(length - 1):
            middle = graph.add_vertex()
            edges.append(graph.add_edge(current, middle))
            current = middle
        edges.append(graph.add_edge(current, end))
        return tuple(edges)

    ends = [rng.choice(pool) for _ in range(2 * lam + 1)]
    sys1 = PathSystem(v1, [path_to(v1, w) for w in ends], list(ends))
    sys2 = PathSystem(v2, [path_to(v2, w) for w in ends], list(ends))
    vertices = sorted(graph.vertices)
    for _ in range(rng.randint(0, 4)):
        graph.add_edge(*rng.sample(vertices, 2))
    return graph, v1, v2, sys1, sys2


def test_common_paths_imply_connectivity():
    """Test that verified systems of size 2λ+1 give λ+1 disjoint paths."""
    rng = random.Random(2024)
    for _ in range(200):
        lam = rng.randint(1, 3)
        graph, v1, v2, sys1, sys2 = _common_paths_instance(lam, rng)
        pairing = {i: i for i in range(2 * lam + 1)}
        assert verify_common_paths(graph, v1, v2, sys1, sys2, pairing)
        assert common_paths_lower_bound(2 * lam + 1) == lam + 1
        assert max_flow_unit(graph, v1, v2).value >= lam + 1


def test_is_cut_vertex(make_graph):
    """Test cut vertices on a path and a triangle with a loop."""
    path = make_graph(3, [(0, 1), (1, 2)])
    assert is_cut_vertex(path, 1)
    assert not is_cut_vertex(path, 0)
    triangle = make_graph(3, [(0, 1), (1, 2), (0, 2), (1, 1)])
    assert not is_cut_vertex(triangle, 1)
    assert not is_cut_vertex(triangle, 9)
