"""Recursive decompose-and-pack driver for Steiner forest packing.

When all terminals are jointly well connected, the groups are merged and a base
solver packs k subgraphs connecting the merged terminal set. Otherwise the graph
is split along a minimum cut that keeps every group on one side. The side with
more groups is solved recursively with the other side contracted to a vertex.
The labels its packing induces on the cut edges are copied to the contracted
vertex of the other side, and that side is solved as an extension problem
(optionally after padding the contracted vertex with fake edges). The two
packings are merged by edge union and re-verified on the original graph.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

import networkx as nx

from forestpack.models.errors import ForestpackError
from forestpack.models.graph import MultiGraph, TerminalSystem
from forestpack.models.packing_models import (
    BaseSolver,
    DecomposeConfig,
    DecomposeResult,
    EdgeSubpartition,
    Packing,
    PackingMeta,
    SearchVerdict,
    TraceAction,
    TraceStep,
)
from forestpack.utils.connectivity import (
    min_terminal_separating_cut,
    steiner_connectivity,
)
from forestpack.utils.packing import prunable_reserve, verify_packing
from forestpack.utils.search import exact_pack
from forestpack.utils.spanning import pack_spanning_trees
from forestpack.utils.transforms import add_fake_edges, edge_union, strip_fake_edges

logger = logging.getLogger(__name__)

JOINT_BASE = "joint-connectivity base case"
TREE_BASE = "Steiner tree packing base case"
EXTENSION = "extension with a balanced boundary subpartition"
EDGE_UNION = "edge-union of packings across a cut"


class _Failure(ForestpackError):
    def __init__(self, detail: str, verdict: Optional[SearchVerdict] = None):
        super().__init__(detail)
        self.verdict = verdict


@dataclass
class _Driver:
    config: DecomposeConfig
    k: int
    trace: list[TraceStep] = field(default_factory=list)

    def record(self, depth: int, action: TraceAction, detail: str, theorem=""):
        self.trace.append(TraceStep(depth, action, detail, theorem))
        logger.info("[depth %d] %s: %s", depth, action.value, detail)

    def fail(
        self, depth: int, detail: str, verdict: Optional[SearchVerdict] = None
    ) -> None:
        self.record(depth, TraceAction.FAIL, detail)
        raise _Failure(detail, verdict)

    def base(
        self, graph: MultiGraph, terminals: TerminalSystem, depth: int, theorem: str
    ) -> Packing:
        reserve = prunable_reserve(graph, terminals.reserve, self.k)
        solver = self.config.base
        if solver is BaseSolver.SPANNING and reserve:
            self.record(
                depth,
                TraceAction.WARNING,
                "spanning base cannot balance reserve vertices; using exact search",
            )
            solver = BaseSolver.EXACT

        if solver is BaseSolver.SPANNING:
            anchor = min(terminals.terminals)
            component = nx.node_connected_component(
                graph.to_networkx(simple=True), anchor
            )
            if not terminals.terminals <= component:
                self.fail(depth, "terminals lie in different components")
            if len(component) == 1:
                packing = Packing(self.k, [frozenset()] * self.k)
            else:
                result = pack_spanning_trees(graph.induced_subgraph(component), self.k)
                if not result.feasible:
                    self.fail(
                        depth,
                        f"no {self.k} spanning trees: witness with "
                        f"{len(result.witness)} parts and {result.crossing} crossings",
                    )
                packing = result.packing
        else:
            result = exact_pack(
                graph, terminals, self.k, balance=reserve, budget=self.config.budget
            )
            if not result.feasible:
                self.fail(
                    depth,
                    f"base search {result.verdict.value} after {result.nodes} nodes",
                    result.verdict,
                )
            packing = result.packing

        self.record(
            depth,
            TraceAction.BASE,
            f"{solver.value} solver packed {terminals.group_count} group(s) "
            f"on {graph.number_of_vertices()} vertices",
            theorem,
        )
        return packing

    def solve(self, graph: MultiGraph, terminals: TerminalSystem, depth: int):
        count = terminals.group_count
        if count == 1:
            return self.base(graph, terminals, depth, TREE_BASE)

        union = terminals.terminals
        joint = steiner_connectivity(graph, union).value if len(union) >= 2 else 0
        if joint >= self.config.joint_threshold * self.k:
            self.record(
                depth,
                TraceAction.BASE,
                f"terminals jointly {joint}-connected; merging {count} groups",
            )
            return self.base(graph, terminals.merged(), depth, JOINT_BASE)

        separation = min_terminal_separating_cut(graph, terminals)
        on_a, on_b = separation.group_split
        if len(on_a) > len(on_b):
            large_groups, large_side = on_a, separation.cut.side_a
            small_groups, small_side = on_b, separation.cut.side_b
        else:
            large_groups, large_side = on_b, separation.cut.side_b
            small_groups, small_side = on_a, separation.cut.side_a
        self.record(
            depth,
            TraceAction.SPLIT,
            f"cut of size {separation.value} separates groups {list(large_groups)} "
            f"from {list(small_groups)}",
        )
        logger.info(
            "Using the source-minimal minimum cut in place of a vertex-minimal one"
        )

        large_graph, small_vertex, _ = graph.contract(small_side)
        large_reserve = set(terminals.reserve & large_side)
        if (
            large_graph.incident_edge_count(small_vertex)
            >= self.config.reserve_degree_factor * self.k
        ):
            large_reserve.add(small_vertex)
        large_terminals = TerminalSystem(
            tuple(terminals.groups[i] for i in large_groups), large_reserve
        )
        large_packing = self.solve(large_graph, large_terminals, depth + 1)

        small_graph, large_vertex, _ = graph.contract(large_side)
        parts = [
            [e for e in small_graph.incident_edges(large_vertex) if e in edges]
            for edges in large_packing.classes
        ]
        small_groups_sets = tuple(terminals.groups[i] for i in small_groups)
        fake = None
        target = self.config.q * self.k
        if self.config.use_fake_edges:
            if small_graph.incident_edge_count(large_vertex) <= target:
                anchor = min(frozenset().union(*small_groups_sets))
                small_graph, fake = add_fake_edges(
                    small_graph, large_vertex, target, anchor
                )
            else:
                self.record(
                    depth,
                    TraceAction.WARNING,
                    f"boundary vertex already exceeds {target} edges; no fake edges",
                )
        boundary = EdgeSubpartition.from_parts(small_graph, large_vertex, parts)
        small_terminals = TerminalSystem(
            small_groups_sets, terminals.reserve & small_side
        )
        result = exact_pack(
            small_graph,
            small_terminals,
            self.k,
            extend=boundary,
            balance=prunable_reserve(small_graph, small_terminals.reserve, self.k),
            budget=self.config.budget,
        )
        if not result.feasible:
            self.fail(
                depth,
                f"extension search {result.verdict.value} after {result.nodes} nodes",
                result.verdict,
            )
        small_packing = result.packing
        if fake is not None:
            small_packing = strip_fake_edges(small_packing, fake)
        self.record(
            depth,
            TraceAction.EXTEND,
            f"extended {sum(map(len, parts))} boundary labels "
            f"with {len(fake.edge_ids) if fake else 0} fake edges",
            EXTENSION,
        )

        merged = Packing(
            self.k,
            [
                frozenset(edge_union(graph, small, large).edges)
                for small, large in zip(
                    small_packing.classes, large_packing.classes, strict=True
                )
            ],
            meta=PackingMeta(
                balanced=terminals.reserve,
                fake_edges_used=small_packing.meta.fake_edges_used
                | large_packing.meta.fake_edges_used,
            ),
        )
        report = verify_packing(graph, terminals, merged, balance=terminals.reserve)
        if not report.is_valid:
            self.fail(
                depth,
                "merged packing failed verification: "
                + "; ".join(issue.message for issue in report.issues),
            )
        self.record(depth, TraceAction.MERGE, "merged packings verified", EDGE_UNION)
        return merged


def decompose_and_pack(
    graph: MultiGraph,
    terminals: TerminalSystem,
    k: int,
    config: DecomposeConfig = DecomposeConfig(),
) -> DecomposeResult:
    """Pack k Steiner forests by recursive cut decomposition.

    Args:
        graph: Host graph
        terminals: Groups to connect and reserve vertices to balance
        k: Number of forests
        config: Driver configuration

    Returns:
        DecomposeResult: The verified packing, or the failure reason with the full
        recursion trace
    """
    terminals.validate(graph)
    driver = _Driver(config, k)
    for index, group in enumerate(terminals.groups):
        if len(group) < 2:
            continue
        value = steiner_connectivity(graph, group).value
        if value < config.q * k:
            driver.record(
                0,
                TraceAction.WARNING,
                f"group {index} is {value}-connected, below {config.q * k}",
            )
            logger.info(
                "Group %d is %d-connected, below the configured %d",
                index,
                value,
                config.q * k,
            )
    if config.reserve_degree_factor != config.q - 2:
        logger.warning(
            "Reserve degree factor %d differs from Q-2 = %d",
            config.reserve_degree_factor,
            config.q - 2,
        )

    try:
        packing = driver.solve(graph, terminals, 0)
    except _Failure as failure:
        return DecomposeResult(
            trace=driver.trace, error=str(failure), verdict=failure.verdict
        )

    report = verify_packing(graph, terminals, packing, balance=terminals.reserve)
    if not report.is_valid:
        driver.record(0, TraceAction.FAIL, "final verification failed")
        return DecomposeResult(trace=driver.trace, error="final verification failed")
    return DecomposeResult(packing=packing, trace=driver.trace)
