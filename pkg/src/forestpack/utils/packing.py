"""Packing verifiers and subpartition utilities.

A packing is a list of k pairwise edge-disjoint edge sets. The verifiers here are
the single source of truth for what a valid packing is: every packing produced by
the searches in this package is re-checked with verify_packing before it is
returned.
"""

import logging
from typing import Iterable, Optional

from networkx.utils import UnionFind

from forestpack.models.errors import PreconditionError
from forestpack.models.graph import EdgeId, MultiGraph, TerminalSystem, VertexId
from forestpack.models.packing_models import EdgeSubpartition, Packing, ThresholdTable
from forestpack.models.packing_report import CheckType, PackingIssue, PackingReport
from forestpack.utils.connectivity import is_cut_vertex

logger = logging.getLogger(__name__)

_THRESHOLDS = ThresholdTable()


def balance_slack(graph: MultiGraph, sp: EdgeSubpartition) -> int:
    """Spare edges at sp.at once every part is filled up to two edges.

    Returns:
        int: incident_edge_count(at) minus the sum of max(2, |P_i|); negative
        exactly when the subpartition is not balanced
    """
    if not graph.has_vertex(sp.at):
        raise PreconditionError(f"Vertex {sp.at} is not in the graph")
    sizes = [len(part) for part in sp.parts]
    return graph.incident_edge_count(sp.at) - sum(max(2, size) for size in sizes)


def is_balanced_subpartition(graph: MultiGraph, sp: EdgeSubpartition) -> bool:
    """Whether the subpartition extends to a partition of E(at) with parts >= 2.

    Unlabeled edges are interchangeable fillers, so this is the counting criterion
    unlabeled >= sum of max(0, 2 - |P_i|).
    """
    return balance_slack(graph, sp) >= 0


def prunable_reserve(
    graph: MultiGraph, reserve: Iterable[VertexId], k: int
) -> frozenset[VertexId]:
    """Reserve vertices that still need balancing.

    A vertex with at least 2k self-loops is balanced by its loops alone, whatever
    the packing does with its other edges, so it is dropped.
    """
    return frozenset(v for v in reserve if len(graph.loops_at(v)) < 2 * k)


def _connects(edges: Iterable[EdgeId], graph: MultiGraph, group: frozenset) -> bool:
    if len(group) < 2:
        return True
    components = UnionFind()
    touched = set()
    for e in edges:
        u, v = graph.endpoints(e)
        components.union(u, v)
        touched.update((u, v))
    if not group <= touched:
        return False
    anchor = components[next(iter(group))]
    return all(components[v] == anchor for v in group)


def verify_extension(graph: MultiGraph, sp: EdgeSubpartition, packing: Packing) -> bool:
    """Whether the packing extends the subpartition at sp.at.

    For every class i, P_i must lie in H_i and sp.at must not be a cut vertex of
    the subgraph induced by H_i.
    """
    if packing.k != sp.k:
        raise PreconditionError(
            f"Packing has k={packing.k} but the subpartition has k={sp.k}"
        )
    for index, edges in enumerate(packing.classes):
        if not sp.part(index + 1) <= edges:
            return False
        live = [e for e in edges if graph.has_edge(e)]
        if is_cut_vertex(graph.edge_induced_subgraph(live), sp.at):
            return False
    return True


def verify_packing(
    graph: MultiGraph,
    terminals: TerminalSystem,
    packing: Packing,
    extend: Optional[EdgeSubpartition] = None,
    balance: Iterable[VertexId] = (),
    forbid_fake: bool = False,
) -> PackingReport:
    """Verify a packing against a terminal system and optional constraints.

    Args:
        graph: Host graph
        terminals: Groups that every class must connect
        packing: Packing to check
        extend: Subpartition the packing must extend
        balance: Vertices whose induced subpartitions must be balanced
        forbid_fake: Reject packings that use flagged fake edges

    Returns:
        PackingReport: Per-check verdicts and the issues found
    """
    report = PackingReport()
    for check in (CheckType.LIVENESS, CheckType.DISJOINTNESS, CheckType.CONNECTIVITY):
        report.checks[check] = True

    live_classes = []
    for index, edges in enumerate(packing.classes):
        missing = sorted(e for e in edges if not graph.has_edge(e))
        if missing:
            report.add_issue(
                PackingIssue(
                    CheckType.LIVENESS,
                    "Class uses edges that are not in the graph",
                    index,
                    str(missing),
                )
            )
        live_classes.append(frozenset(e for e in edges if graph.has_edge(e)))

    owner: dict[EdgeId, int] = {}
    for index, edges in enumerate(live_classes):
        for e in sorted(edges):
            if e in owner:
                report.add_issue(
                    PackingIssue(
                        CheckType.DISJOINTNESS,
                        f"Edge {e} is shared with class {owner[e]}",
                        index,
                        str(e),
                    )
                )
            else:
                owner[e] = index

    for index, edges in enumerate(live_classes):
        for group_index, group in enumerate(terminals.groups):
            if not _connects(edges, graph, group):
                report.add_issue(
                    PackingIssue(
                        CheckType.CONNECTIVITY,
                        f"Group {group_index} is not connected",
                        index,
                        str(sorted(group)),
                    )
                )

    if extend is not None:
        report.checks[CheckType.EXTENSION] = True
        if not graph.has_vertex(extend.at):
            report.add_issue(
                PackingIssue(
                    CheckType.EXTENSION, f"Vertex {extend.at} is not in the graph"
                )
            )
        elif packing.k != extend.k:
            report.add_issue(
                PackingIssue(
                    CheckType.EXTENSION,
                    f"Subpartition has k={extend.k}, packing has k={packing.k}",
                )
            )
        else:
            for index, edges in enumerate(live_classes):
                part = extend.part(index + 1)
                if not part <= edges:
                    report.add_issue(
                        PackingIssue(
                            CheckType.EXTENSION,
                            "Class does not contain its prescribed part",
                            index,
                            str(sorted(part - edges)),
                        )
                    )
                elif is_cut_vertex(graph.edge_induced_subgraph(edges), extend.at):
                    report.add_issue(
                        PackingIssue(
                            CheckType.EXTENSION,
                            f"Vertex {extend.at} is a cut vertex of the class",
                            index,
                        )
                    )

    balance = sorted(set(balance))
    if balance:
        report.checks[CheckType.BALANCE] = True
        checked = Packing(packing.k, live_classes)
        for vertex in balance:
            if not graph.has_vertex(vertex):
                report.add_issue(
                    PackingIssue(
                        CheckType.BALANCE, f"Vertex {vertex} is not in the graph"
                    )
                )
                continue
            induced = EdgeSubpartition.from_packing(graph, vertex, checked)
            slack = balance_slack(graph, induced)
            if slack < 0:
                report.add_issue(
                    PackingIssue(
                        CheckType.BALANCE,
                        f"Vertex {vertex} is unbalanced (short by {-slack})",
                        context=str([len(p) for p in induced.parts]),
                    )
                )

    if forbid_fake:
        report.checks[CheckType.FAKE_EDGES] = True
        for index, edges in enumerate(live_classes):
            fake = sorted(e for e in edges if graph.is_fake(e))
            if fake:
                report.add_issue(
                    PackingIssue(
                        CheckType.FAKE_EDGES, "Class uses fake edges", index, str(fake)
                    )
                )

    report.stats = {
        "classes": packing.k,
        "edges_used": sum(len(edges) for edges in live_classes),
        "groups": terminals.group_count,
    }
    if not report.is_valid:
        logger.debug("Packing failed verification with %d issues", len(report.issues))
    return report


def threshold_f(t: int) -> int:
    """Value of f(t) with f(3) = 0 and f(t) = f(t-1) + 2t + 1."""
    return _THRESHOLDS.value(t)


def normalize_subpartition(sp: EdgeSubpartition, k_out: int) -> EdgeSubpartition:
    """Keep the k_out smallest parts and refill any empty part.

    Kept parts are re-indexed by increasing size (ties by original index). Edges of
    dropped parts become unlabeled, then each empty kept part takes the smallest
    unlabeled edge id.

    Args:
        sp: Subpartition with at least k_out parts
        k_out: Number of parts to keep

    Returns:
        EdgeSubpartition: The normalized subpartition with k = k_out
    """
    if k_out < 0 or sp.k < k_out:
        raise PreconditionError(f"Cannot keep {k_out} of {sp.k} parts")
    order = sorted(range(1, sp.k + 1), key=lambda i: (len(sp.part(i)), i))
    relabel = {old: new for new, old in enumerate(order[:k_out], start=1)}
    labels = {e: relabel.get(label, 0) for e, label in sp.labels.items()}

    for index in range(1, k_out + 1):
        if any(label == index for label in labels.values()):
            continue
        spare = sorted(e for e, label in labels.items() if label == 0)
        if not spare:
            raise PreconditionError(
                f"Not enough unlabeled edges at {sp.at} to fill part {index}"
            )
        labels[spare[0]] = index
    return EdgeSubpartition(at=sp.at, k=k_out, labels=labels)


def verify_s_connector(h: MultiGraph, terminals: Iterable[VertexId]) -> bool:
    """Sufficient S-connector test.

    True when S is connected in h and every vertex of h outside S has degree
    exactly 2 in h.
    """
    group = frozenset(terminals)
    if any(h.degree(v) != 2 for v in h.vertices if v not in group):
        return False
    if len(group) >= 2 and not all(h.has_vertex(v) for v in group):
        return False
    return _connects(h.edges, h, group)
