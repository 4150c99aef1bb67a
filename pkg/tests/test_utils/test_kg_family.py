"""Tests for the (k,g) feasibility functional and its audit."""

import random

import pytest

from forestpack.models.errors import PreconditionError
from forestpack.models.kg_models import AdmissiblePartition, ParityFunction
from forestpack.utils.generators import random_multigraph, treepacking_instance
from forestpack.utils.kg_family import (
    audit_kg,
    check_treepacking_hypotheses,
    f_g,
    iter_admissible_partitions,
    make_parity_g,
    without_edges,
)

ZERO = ParityFunction({})


def _partition(*blocks, outside=()):
    return AdmissiblePartition(
        tuple(frozenset(block) for block in blocks), frozenset(outside)
    )


def test_parity_g_follows_degree(make_graph):
    """Test g on a star: odd leaves get 1, S gets 0."""
    star = make_graph(4, [(0, 1), (0, 2), (0, 3), (3, 3)])
    pf = make_parity_g(star, {0})
    assert [pf(v) for v in range(4)] == [0, 1, 1, 1]
    path = make_graph(3, [(0, 1), (1, 2)])
    assert make_parity_g(path, {0, 2})(1) == 0
    assert make_parity_g(path, {0, 1, 2}).total(range(3)) == 0


def test_f_g_parallel_edges(make_graph):
    """Test two vertices joined by three parallel edges."""
    graph = make_graph(2, [(0, 1)] * 3)
    assert f_g(graph, {0, 1}, ZERO, _partition({0}, {1}), 1) == 4
    assert f_g(graph, {0, 1}, ZERO, _partition({0, 1}), 1) == 0


def test_f_g_ignores_block_order(make_graph):
    """Test that listing the blocks in another order changes nothing."""
    graph = make_graph(3, [(0, 1), (1, 2), (0, 2), (0, 1)])
    first = _partition({0}, {1, 2})
    second = _partition({1, 2}, {0})
    assert first == second
    assert f_g(graph, {0, 1}, ZERO, first, 2) == f_g(graph, {0, 1}, ZERO, second, 2)


def test_f_g_rejects_inadmissible(make_graph):
    """Test blocks that miss S and partitions that do not cover S."""
    graph = make_graph(3, [(0, 1), (1, 2)])
    with pytest.raises(PreconditionError):
        f_g(graph, {0}, ZERO, _partition({0}, {2}, outside={1}), 1)
    with pytest.raises(PreconditionError):
        f_g(graph, {0, 2}, ZERO, _partition({0, 1}, outside={2}), 1)
    with pytest.raises(PreconditionError):
        f_g(graph, {0}, ZERO, _partition({0}), 1)
    with pytest.raises(PreconditionError):
        f_g(graph, set(), ZERO, _partition(outside={0, 1, 2}), 1)


def _closed_form_count(s_size: int, others: int) -> int:
    # Sum over set partitions of S of (blocks + 1) ** others
    counts = {1: [1], 2: [1, 1], 3: [1, 3, 1], 4: [1, 7, 6, 1]}[s_size]
    return sum(
        count * (blocks + 1) ** others
        for blocks, count in enumerate(counts, start=1)
    )


@pytest.mark.parametrize(
    "s_size,others", [(1, 0), (2, 1), (3, 2), (4, 1), (2, 3)]
)
def test_partition_count_matches_closed_form(make_graph, s_size, others):
    """Test the enumeration against a direct count."""
    graph = make_graph(s_size + others, [])
    partitions = list(iter_admissible_partitions(graph, range(s_size)))
    assert len(partitions) == _closed_form_count(s_size, others)
    assert len(set(partitions)) == len(partitions)


def test_isolated_terminals_give_minus_2k(make_graph):
    """Test two terminals with no edges."""
    graph = make_graph(2, [])
    for k in (1, 2, 3):
        audit = audit_kg(graph, {0, 1}, ZERO, k)
        assert audit.min_value == -2 * k
        assert audit.argmin == _partition({0}, {1})
        assert not audit.nonnegative


def test_odd_outside_vertices_go_negative(make_graph):
    """Test a lone terminal beside an edge of odd-degree vertices."""
    graph = make_graph(3, [(1, 2)])
    audit = audit_kg(graph, {0}, make_parity_g(graph, {0}), 1)
    assert audit.min_value == -2
    assert audit.argmin.outside == frozenset({1, 2})


def test_parallel_edges_audit_nonnegative(make_graph):
    """Test the three-edge example has minimum zero."""
    graph = make_graph(2, [(0, 1)] * 3)
    audit = audit_kg(graph, {0, 1}, ZERO, 1)
    assert audit.min_value == 0
    assert audit.nonnegative


def test_audit_bound(make_graph):
    """Test the exhaustive size limit."""
    with pytest.raises(PreconditionError):
        audit_kg(make_graph(4, []), {0}, ZERO, 1, bound=3)


def test_audit_matches_plain_enumeration():
    """Test the pruned audit against evaluating every partition."""
    rng = random.Random(41)
    for _ in range(40):
        n = rng.randint(2, 5)
        graph = random_multigraph(n, rng.randint(0, 8), rng)
        s = set(rng.sample(range(n), rng.randint(1, n)))
        k = rng.randint(1, 2)
        pf = make_parity_g(graph, s)
        values = [
            (f_g(graph, s, pf, partition, k), partition.sort_key(), partition)
            for partition in iter_admissible_partitions(graph, s)
        ]
        best_value, _, best_partition = min(values, key=lambda item: item[:2])
        audit = audit_kg(graph, s, pf, k)
        assert audit.min_value == best_value
        assert audit.argmin == best_partition


def test_hypotheses_on_generated_instance():
    """Test that the generator meets every hypothesis."""
    inst = treepacking_instance(3, 3, 1, seed=5)
    report = check_treepacking_hypotheses(inst.graph, inst.terminals, inst.deleted, 1)
    assert report.holds
    assert report.connectivity >= 3


def test_hypotheses_detect_violations(make_graph):
    """Test degree, independence and deletion-size failures."""
    graph = make_graph(4, [(0, 1)] * 3 + [(2, 0), (2, 1), (2, 3), (2, 0), (3, 0)])
    report = check_treepacking_hypotheses(graph, {0, 1}, {0, 1}, 1)
    assert not report.degree_three
    assert not report.independent
    assert not report.deleted_within_k
    assert not report.holds


def test_without_edges(triangle):
    """Test edge deletion and unknown ids."""
    assert sorted(without_edges(triangle, [1]).edges) == [0, 2]
    with pytest.raises(PreconditionError):
        without_edges(triangle, [5])


def _audit_conforming(seed: int, count: int, max_s: int, max_others: int) -> None:
    rng = random.Random(seed)
    for _ in range(count):
        k = rng.randint(1, 2)
        inst = treepacking_instance(
            rng.randint(2, max_s), rng.randint(0, max_others), k, rng.randrange(10**6)
        )
        report = check_treepacking_hypotheses(
            inst.graph, inst.terminals, inst.deleted, k
        )
        assert report.holds
        reduced = without_edges(inst.graph, inst.deleted)
        pf = make_parity_g(reduced, inst.terminals)
        assert audit_kg(reduced, inst.terminals, pf, k).nonnegative


def test_conforming_instances_audit_nonnegative():
    """Test the audit on a few instances meeting the hypotheses."""
    _audit_conforming(17, 8, 3, 3)


@pytest.mark.slow
def test_conforming_instances_audit_nonnegative_corpus():
    """Test the audit on a hundred conforming instances."""
    _audit_conforming(1717, 100, 4, 6)
