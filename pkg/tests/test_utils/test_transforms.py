"""Tests for graph surgeries."""

import random
from itertools import combinations

import pytest

from forestpack.models.errors import PreconditionError
from forestpack.models.graph import EdgeKind
from forestpack.models.packing_models import EdgeSubpartition, Packing
from forestpack.utils.connectivity import (
    constrained_min_cut,
    is_cut_vertex,
    max_flow_unit,
    min_terminal_separating_cut,
    steiner_connectivity,
)
from forestpack.utils.generators import random_instance, random_multigraph
from forestpack.utils.packing import verify_packing
from forestpack.utils.search import exact_pack
from forestpack.utils.transforms import (
    add_fake_edges,
    edge_union,
    expand_suppressed,
    loop_for_edge,
    mader_split,
    restore_loop_edge,
    strip_fake_edges,
    suppress_all_degree2,
    suppress_degree2,
)


def test_mader_split_preserves_local_connectivity(make_graph):
    """Test splitting off at a vertex of K5."""
    graph = make_graph(5, list(combinations(range(5), 2)))
    split, record = mader_split(graph, 0)
    assert record.center == 0
    assert split.degree(0) == 2
    assert split.number_of_edges() == graph.number_of_edges() - 1
    y, z = record.endpoints
    assert y != z
    assert record.added in split.edges_between(y, z)
    for a, b in combinations(range(1, 5), 2):
        assert max_flow_unit(split, a, b).value >= max_flow_unit(graph, a, b).value


def test_mader_split_on_doubled_cycle(make_graph):
    """Test a split on a doubled 4-cycle keeps every pair 4-connected."""
    cycle = [(0, 1), (1, 2), (2, 3), (3, 0)]
    graph = make_graph(4, cycle + cycle)
    split, record = mader_split(graph, 0)
    assert set(record.endpoints) == {1, 3}
    for a, b in combinations(range(1, 4), 2):
        assert max_flow_unit(split, a, b).value == 4


def test_mader_split_preconditions(make_graph, triangle):
    """Test low degree, one neighbor, loops and cut vertices."""
    with pytest.raises(PreconditionError):
        mader_split(triangle, 0)
    with pytest.raises(PreconditionError):
        mader_split(make_graph(2, [(0, 1)] * 4), 0)
    with pytest.raises(PreconditionError):
        mader_split(make_graph(3, [(0, 1)] * 2 + [(0, 2)] * 2 + [(1, 1)]), 0)
    bowtie = make_graph(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
    with pytest.raises(PreconditionError):
        mader_split(bowtie, 0)


def test_suppress_degree2(make_graph):
    """Test suppressing the middle of a path."""
    graph = make_graph(3, [(0, 1), (1, 2)])
    result, record = suppress_degree2(graph, 1)
    assert not result.has_vertex(1)
    assert record.replaced == (0, 1)
    assert record.endpoints == (0, 2)
    assert result.endpoints(record.new_edge) == (0, 2)
    assert expand_suppressed({record.new_edge}, record) == frozenset({0, 1})
    assert expand_suppressed({7}, record) == frozenset({7})


def test_suppress_rejects_parallel_pair(make_graph):
    """Test that both edges to one neighbor cannot be suppressed."""
    graph = make_graph(2, [(0, 1), (0, 1)])
    with pytest.raises(PreconditionError):
        suppress_degree2(graph, 1)
    with pytest.raises(PreconditionError):
        suppress_degree2(graph, 5)


def test_suppress_all_on_cycle(make_graph):
    """Test sequential suppression on a 4-cycle."""
    graph = make_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    result, records = suppress_all_degree2(graph, [3, 1])
    assert [record.vertex for record in records] == [1, 3]
    assert sorted(result.vertices) == [0, 2]
    assert len(result.edges_between(0, 2)) == 2


def test_suppress_all_skips_ineligible(k4):
    """Test that degree-3 vertices are skipped."""
    result, records = suppress_all_degree2(k4, [0, 1])
    assert records == []
    assert result.number_of_edges() == 6


def test_fake_edges_pad_incidence(triangle):
    """Test padding a vertex to a target incidence."""
    padded, record = add_fake_edges(triangle, 0, 4, 1)
    assert padded.incident_edge_count(0) == 4
    assert len(record.edge_ids) == 2
    assert all(padded.kind(e) is EdgeKind.FAKE for e in record.edge_ids)
    assert padded.edges_of_kind(EdgeKind.FAKE) == record.edge_ids
    assert triangle.number_of_edges() == 3


def test_fake_edges_preconditions(triangle):
    """Test anchors and targets that are too small."""
    with pytest.raises(PreconditionError):
        add_fake_edges(triangle, 0, 4, 0)
    with pytest.raises(PreconditionError):
        add_fake_edges(triangle, 0, 1, 1)


def test_strip_fake_edges_records_usage(triangle):
    """Test stripping fake edges out of a packing."""
    padded, record = add_fake_edges(triangle, 0, 3, 2)
    (fake,) = record.edge_ids
    packing = Packing(2, [{0, fake}, {1}])
    stripped = strip_fake_edges(packing, record)
    assert stripped.classes[0] == frozenset({0})
    assert stripped.meta.fake_edges_used == frozenset({fake})


def test_loop_for_edge_keeps_reserve_incidence(triangle):
    """Test that a reserve endpoint keeps its incident edge count."""
    result, record = loop_for_edge(triangle, 0, {0})
    assert not result.has_edge(0)
    assert result.incident_edge_count(0) == 2
    assert result.incident_edge_count(1) == 1
    ((vertex, loop),) = record.loops
    assert vertex == 0
    assert result.kind(loop) is EdgeKind.LOOP
    assert record.loop_ids == frozenset({loop})


def test_restore_loop_edge(triangle):
    """Test undoing a loop replacement."""
    result, record = loop_for_edge(triangle, 1, {1, 2})
    restored = restore_loop_edge(result, record)
    assert restored.endpoints(1) == (1, 2)
    assert restored.edges_of_kind(EdgeKind.LOOP) == frozenset()
    assert restored.number_of_edges() == 3


def test_edge_union(triangle):
    """Test the subgraph spanned by two edge sets."""
    union = edge_union(triangle, {0}, {1, 0})
    assert sorted(union.edges) == [0, 1]
    assert sorted(union.vertices) == [0, 1, 2]


def _merge_across_cut(seed: int):
    """Pack one side of a separating cut, extend on the other and merge."""
    rng = random.Random(seed)
    k = rng.randint(1, 2)
    instance = random_instance(rng.randint(5, 7), 2, 1.5, rng.randrange(10**6))
    graph, terminals = instance.graph, instance.terminals
    separation = min_terminal_separating_cut(graph, terminals)
    on_a, on_b = separation.group_split

    a_graph, b_vertex, _ = graph.contract(separation.cut.side_b)
    a_result = exact_pack(a_graph, terminals.restricted_to(on_a), k)
    if not a_result.feasible:
        return None

    b_graph, a_vertex, _ = graph.contract(separation.cut.side_a)
    parts = [
        [e for e in b_graph.incident_edges(a_vertex) if e in edges]
        for edges in a_result.packing.classes
    ]
    boundary = EdgeSubpartition.from_parts(b_graph, a_vertex, parts)
    b_result = exact_pack(b_graph, terminals.restricted_to(on_b), k, extend=boundary)
    if not b_result.feasible:
        return None

    merged = [
        frozenset(edge_union(graph, first, second).edges)
        for first, second in zip(
            a_result.packing.classes, b_result.packing.classes, strict=True
        )
    ]
    return graph, terminals, Packing(k, merged)


def _check_merges(seeds) -> int:
    merged = 0
    for seed in seeds:
        outcome = _merge_across_cut(seed)
        if outcome is None:
            continue
        graph, terminals, packing = outcome
        report = verify_packing(graph, terminals, packing)
        assert report.is_valid, report.issues
        merged += 1
    return merged


def test_edge_union_merges_across_cut():
    """Test merged classes on a few cut-contract-pack-extend instances."""
    assert _check_merges(range(40)) > 0


@pytest.mark.slow
def test_edge_union_merges_across_cut_corpus():
    """Test two hundred cut-contract-pack-extend instances."""
    assert _check_merges(range(1000, 1200)) > 0


def _splittable(rng: random.Random, sizes: tuple[int, int]):
    """Random loopless multigraph with a vertex that meets the splitting hypotheses."""
    while True:
        n = rng.randint(*sizes)
        graph = random_multigraph(n, rng.randint(2 * n, 3 * n), rng)
        eligible = [
            x
            for x in sorted(graph.vertices)
            if graph.degree(x) >= 4
            and len(graph.neighbors(x)) >= 2
            and not is_cut_vertex(graph, x)
        ]
        if eligible:
            return graph, rng.choice(eligible)


def _check_splits(seed: int, count: int, sizes: tuple[int, int]) -> None:
    rng = random.Random(seed)
    for _ in range(count):
        graph, x = _splittable(rng, sizes)
        split, record = mader_split(graph, x)
        assert split.degree(x) == graph.degree(x) - 2
        others = sorted(v for v in graph.vertices if v != x)
        for a, b in combinations(others, 2):
            assert max_flow_unit(split, a, b).value == max_flow_unit(graph, a, b).value


def test_mader_split_random_instances():
    """Test splits on random multigraphs with up to eight vertices."""
    _check_splits(41, 30, (3, 8))


@pytest.mark.slow
def test_mader_split_random_corpus():
    """Test two hundred random splits with up to ten vertices."""
    _check_splits(4100, 200, (3, 10))


@pytest.mark.slow
def test_mader_split_random_corpus_large():
    """Test splits on random multigraphs with eleven and twelve vertices."""
    _check_splits(4200, 20, (11, 12))


def test_suppress_degree2_preserves_connectivity():
    """Test Steiner connectivity of sets avoiding the suppressed vertex."""
    rng = random.Random(31)
    checked = 0
    for _ in range(60):
        graph = random_multigraph(7, rng.randint(6, 12), rng)
        eligible = [
            u
            for u in sorted(graph.vertices)
            if graph.degree(u) == 2 and len(graph.neighbors(u)) == 2
        ]
        if not eligible:
            continue
        u = rng.choice(eligible)
        others = sorted(v for v in graph.vertices if v != u)
        terminals = rng.sample(others, rng.randint(2, len(others)))
        result, _ = suppress_degree2(graph, u)
        assert (
            steiner_connectivity(result, terminals).value
            == steiner_connectivity(graph, terminals).value
        )
        checked += 1
    assert checked > 0


def test_fake_edges_raise_constrained_cut():
    """Test the cut between v and a group after padding v toward the anchor."""
    rng = random.Random(32)
    for seed in range(30):
        instance = random_instance(7, 1, 0.6, seed)
        graph, (group,) = instance.graph, instance.terminals.groups
        previous = steiner_connectivity(graph, group).value
        v = graph.add_vertex()
        for _ in range(rng.randint(1, 4)):
            graph.add_edge(v, rng.choice(sorted(group)))
        before = constrained_min_cut(graph, {v}, group).value
        assert before == graph.incident_edge_count(v)

        target = before + rng.randint(0, 6)
        padded, record = add_fake_edges(graph, v, target, min(group))
        after = constrained_min_cut(padded, {v}, group).value
        assert after == before + len(record.edge_ids) == target
        assert after >= min(target, previous)


def test_loop_for_edge_round_trip():
    """Test that restoring a replaced edge gives back the edge multiset."""
    rng = random.Random(33)
    for _ in range(30):
        graph = random_multigraph(6, rng.randint(1, 12), rng)
        reserve = set(rng.sample(sorted(graph.vertices), rng.randint(0, 3)))
        edge = rng.choice(sorted(graph.edges))
        result, record = loop_for_edge(graph, edge, reserve)
        for vertex in reserve:
            assert result.incident_edge_count(vertex) == graph.incident_edge_count(
                vertex
            )
        restored = restore_loop_edge(result, record)
        assert dict(restored.edges) == dict(graph.edges)
        assert restored.edges_of_kind(EdgeKind.LOOP) == frozenset()
