"""Tests for packing verifiers and subpartition utilities."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forestpack.models.errors import PreconditionError
from forestpack.models.graph import MultiGraph, TerminalSystem
from forestpack.models.packing_models import EdgeSubpartition, Packing
from forestpack.models.packing_report import CheckType
from forestpack.utils.packing import (
    balance_slack,
    is_balanced_subpartition,
    normalize_subpartition,
    prunable_reserve,
    threshold_f,
    verify_extension,
    verify_packing,
    verify_s_connector,
)
from forestpack.utils.transforms import add_fake_edges


def _star(make_graph, leaves: int):
    return make_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


@pytest.fixture
def end_groups():
    """One group joining the ends of the triangle's 0-2 side."""
    return TerminalSystem((frozenset({0, 2}),))


def test_balance_needs_two_edges_per_part(make_graph):
    """Test a degree-3 vertex with parts of sizes 1 and 0."""
    star = _star(make_graph, 3)
    sp = EdgeSubpartition.from_parts(star, 0, [[0], []])
    assert balance_slack(star, sp) == -1
    assert not is_balanced_subpartition(star, sp)

    bigger = _star(make_graph, 4)
    sp = EdgeSubpartition.from_parts(bigger, 0, [[0], []])
    assert is_balanced_subpartition(bigger, sp)


def test_balance_counts_large_parts_fully(make_graph):
    """Test that a part above two edges uses up its own size."""
    star = _star(make_graph, 5)
    sp = EdgeSubpartition.from_parts(star, 0, [[0, 1, 2], []])
    assert balance_slack(star, sp) == 0


def test_balance_unknown_vertex(triangle):
    """Test the vertex precondition."""
    with pytest.raises(PreconditionError):
        balance_slack(triangle, EdgeSubpartition(at=7, k=0, labels={}))


def test_normalize_keeps_smallest_parts(make_graph):
    """Test keeping the two smallest of parts sized 3, 1, 2."""
    star = _star(make_graph, 7)
    sp = EdgeSubpartition.from_parts(star, 0, [[0, 1, 2], [3], [4, 5]])
    normalized = normalize_subpartition(sp, 2)
    assert normalized.k == 2
    assert normalized.parts == [frozenset({3}), frozenset({4, 5})]
    assert normalized.unlabeled == frozenset({0, 1, 2, 6})


def test_normalize_refills_empty_part():
    """Test that an empty kept part takes the smallest unlabeled edge."""
    sp = EdgeSubpartition(at=0, k=2, labels={0: 2, 1: 2, 4: 0, 3: 0})
    normalized = normalize_subpartition(sp, 2)
    assert normalized.part(1) == frozenset({3})
    assert normalized.part(2) == frozenset({0, 1})


def test_normalize_preconditions():
    """Test too many kept parts and too few spare edges."""
    sp = EdgeSubpartition(at=0, k=1, labels={0: 1})
    with pytest.raises(PreconditionError):
        normalize_subpartition(sp, 2)
    empty = EdgeSubpartition(at=0, k=2, labels={0: 1})
    with pytest.raises(PreconditionError):
        normalize_subpartition(empty, 2)


def test_prunable_reserve_drops_loop_heavy_vertices(make_graph):
    """Test that 2k loops balance a vertex on their own."""
    graph = make_graph(2, [(0, 0), (0, 0), (0, 1), (1, 1)])
    assert prunable_reserve(graph, {0, 1}, 1) == frozenset({1})
    assert prunable_reserve(graph, {0, 1}, 2) == frozenset({0, 1})


def test_verify_packing_valid(triangle, end_groups):
    """Test two classes joining 0 and 2."""
    report = verify_packing(triangle, end_groups, Packing(2, [{2}, {0, 1}]))
    assert report.is_valid
    assert report.stats == {"classes": 2, "edges_used": 3, "groups": 1}
    assert set(report.checks) == {
        CheckType.LIVENESS,
        CheckType.DISJOINTNESS,
        CheckType.CONNECTIVITY,
    }


def test_verify_packing_reports_each_failure(triangle, end_groups):
    """Test liveness, disjointness and connectivity issues."""
    report = verify_packing(triangle, end_groups, Packing(3, [{2, 9}, {2}, {1}]))
    failed = {issue.check for issue in report.issues}
    assert failed == {
        CheckType.LIVENESS,
        CheckType.DISJOINTNESS,
        CheckType.CONNECTIVITY,
    }
    assert not report.is_valid


def test_verify_packing_extension(triangle, end_groups):
    """Test that the vertex of an extension may not be a cut vertex."""
    sp = EdgeSubpartition(at=1, k=1, labels={0: 1, 1: 0})
    full = Packing(1, [{0, 1, 2}])
    assert verify_packing(triangle, end_groups, full, extend=sp).is_valid
    report = verify_packing(triangle, end_groups, Packing(1, [{0, 1}]), extend=sp)
    assert [issue.check for issue in report.issues] == [CheckType.EXTENSION]
    assert verify_extension(triangle, sp, Packing(1, [{0, 1, 2}]))
    assert not verify_extension(triangle, sp, Packing(1, [{1, 2}]))


def test_verify_packing_extension_k_mismatch(triangle, end_groups):
    """Test a subpartition with a different class count."""
    sp = EdgeSubpartition(at=1, k=2, labels={0: 1, 1: 2})
    report = verify_packing(triangle, end_groups, Packing(1, [{0, 1, 2}]), extend=sp)
    assert not report.is_valid
    with pytest.raises(PreconditionError):
        verify_extension(triangle, sp, Packing(1, [{0, 1, 2}]))


def test_verify_packing_balance(triangle):
    """Test a vertex left with one edge in each of two classes."""
    groups = TerminalSystem((frozenset({0}),))
    report = verify_packing(triangle, groups, Packing(2, [{0}, {2}]), balance=[0])
    assert [issue.check for issue in report.issues] == [CheckType.BALANCE]
    report = verify_packing(triangle, groups, Packing(1, [{0}]), balance=[0])
    assert report.is_valid


def test_verify_packing_forbid_fake(triangle, end_groups):
    """Test that a packing through a fake edge is rejected on request."""
    padded, record = add_fake_edges(triangle, 0, 3, 2)
    (fake,) = record.edge_ids
    packing = Packing(1, [{fake}])
    assert verify_packing(padded, end_groups, packing).is_valid
    report = verify_packing(padded, end_groups, packing, forbid_fake=True)
    assert [issue.check for issue in report.issues] == [CheckType.FAKE_EDGES]


def test_threshold_values():
    """Test the recurrence values used by the driver."""
    assert [threshold_f(t) for t in range(3, 7)] == [0, 9, 20, 33]


def test_s_connector(make_graph):
    """Test the sufficient S-connector criterion."""
    path = make_graph(3, [(0, 1), (1, 2)])
    assert verify_s_connector(path, [0, 2])
    assert not verify_s_connector(path, [0])
    star = _star(make_graph, 3)
    assert not verify_s_connector(star, [1, 2, 3])
    assert verify_s_connector(star, [0, 1, 2, 3])


def _fills_every_part(sizes: list[int], fillers: int) -> bool:
    """Try every placement of the unlabeled edges into the k parts."""
    if fillers == 0:
        return all(size >= 2 for size in sizes)
    for index in range(len(sizes)):
        sizes[index] += 1
        found = _fills_every_part(sizes, fillers - 1)
        sizes[index] -= 1
        if found:
            return True
    return False


@settings(max_examples=80, deadline=None)
@given(
    st.integers(min_value=1, max_value=4).flatmap(
        lambda k: st.tuples(
            st.just(k),
            st.lists(st.integers(min_value=0, max_value=k), max_size=10),
        )
    )
)
def test_balance_matches_exhaustive_extension(drawn):
    """Test the counting criterion against every filler placement."""
    k, labels = drawn
    star = MultiGraph()
    center = star.add_vertex()
    for _ in labels:
        star.add_edge(center, star.add_vertex())
    sp = EdgeSubpartition(
        at=center, k=k, labels=dict(zip(star.incident_edges(center), labels))
    )
    sizes = [len(part) for part in sp.parts]
    assert is_balanced_subpartition(star, sp) == _fills_every_part(
        sizes, len(sp.unlabeled)
    )
