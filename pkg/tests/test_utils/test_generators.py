"""Tests for the seeded instance generators."""

import random

import pytest

from forestpack.models.errors import PreconditionError
from forestpack.utils.connectivity import steiner_connectivity
from forestpack.utils.generators import (
    edge_connected_multigraph,
    group_connectivities,
    random_instance,
    random_multigraph,
    treepacking_instance,
)
from forestpack.utils.kg_family import check_treepacking_hypotheses


def test_random_multigraph_is_loopless():
    """Test vertex and edge counts."""
    graph = random_multigraph(5, 30, random.Random(1))
    assert sorted(graph.vertices) == [0, 1, 2, 3, 4]
    assert graph.number_of_edges() == 30
    assert not any(u == v for u, v in graph.edges.values())
    with pytest.raises(PreconditionError):
        random_multigraph(1, 1, random.Random(1))


def test_random_instance_is_seeded():
    """Test that a seed fixes the instance."""
    first = random_instance(8, 2, 1.0, seed=42)
    second = random_instance(8, 2, 1.0, seed=42)
    assert dict(first.graph.edges) == dict(second.graph.edges)
    assert first.terminals == second.terminals
    assert all(len(group) >= 2 for group in first.terminals.groups)
    assert first.terminals.group_count == 2


def test_random_instance_meets_target():
    """Test the connectivity retry loop."""
    instance = random_instance(6, 1, 2.0, seed=3, target=2)
    if instance.met_target:
        assert min(group_connectivities(instance.graph, instance.terminals)) >= 2
    assert 1 <= instance.attempts <= 50


def test_random_instance_rejects_too_many_groups():
    """Test that t groups of two need 2t vertices."""
    with pytest.raises(PreconditionError):
        random_instance(3, 2, 1.0, seed=0)


def test_edge_connected_multigraph():
    """Test the global edge connectivity target."""
    rng = random.Random(8)
    for k in (1, 3, 5):
        graph = edge_connected_multigraph(6, k, rng)
        assert steiner_connectivity(graph, sorted(graph.vertices)).value >= k


def test_treepacking_instance_hypotheses():
    """Test that generated instances meet every hypothesis."""
    for seed in range(5):
        inst = treepacking_instance(3, 4, 2, seed)
        report = check_treepacking_hypotheses(
            inst.graph, inst.terminals, inst.deleted, 2
        )
        assert report.holds
        assert inst.deleted <= frozenset(inst.graph.edges)
