"""Generator and machine checks for the extension-theorem counterexample.

Two cliques A and B on Qk+1 vertices are joined by Qk - floor((k-1)/2) edges.
All but k - floor((k-1)/2) - 1 of them (the set X) are subdivided, and a new
vertex v is joined to every subdivider, floor((k-1)/2) times into A and
ceil((k-1)/2) times into B, so v has degree exactly Qk. Subdivided loops raise
every subdivider to incidence at least Qk. Labeling every edge from v to a
subdivider 1 leaves classes 2..k with only the unsubdivided edges Y to cross
between A and B, and there are too few of them.
"""

import logging
import random
from itertools import product

from forestpack.models.counterexample_models import (
    REFUTE_MAX_QK,
    BottleneckReport,
    BottleneckVerdict,
    CounterexampleAudit,
    CounterexampleInstance,
    CounterexampleParams,
    RefutationResult,
)
from forestpack.models.errors import InternalInvariantError, PreconditionError
from forestpack.models.graph import MultiGraph, VertexId
from forestpack.models.packing_models import (
    DEFAULT_BUDGET,
    EdgeSubpartition,
    SearchVerdict,
)
from forestpack.utils.connectivity import constrained_min_cut, steiner_connectivity
from forestpack.utils.search import exact_pack

logger = logging.getLogger(__name__)


def _validate_params(q: int, k: int) -> None:
    if k < 3:
        raise PreconditionError(f"The construction needs k >= 3, got k={k}")
    if q < 4:
        raise PreconditionError(f"The construction needs Q >= 4, got Q={q}")


def _build(params: CounterexampleParams) -> CounterexampleInstance:
    _validate_params(params.q, params.k)
    q, k, qk = params.q, params.k, params.qk
    rng = random.Random(params.seed)
    into_a = (k - 1) // 2
    into_b = k - 1 - into_a
    x_count = qk - k + 1
    y_count = k - 1 if params.control else k - into_a - 1

    graph = MultiGraph()
    clique_a = [graph.add_vertex() for _ in range(qk + 1)]
    clique_b = [graph.add_vertex() for _ in range(qk + 1)]
    for clique in (clique_a, clique_b):
        for i, u in enumerate(clique):
            for w in clique[i + 1 :]:
                graph.add_edge(u, w)

    pairs = rng.sample(list(product(clique_a, clique_b)), x_count + y_count)
    pairs_x, pairs_y = pairs[:x_count], pairs[x_count:]
    y_edges = frozenset(graph.add_edge(a, b) for a, b in pairs_y)

    subdividers = []
    for a, b in pairs_x:
        edge = graph.add_edge(a, b)
        subdividers.append(graph.subdivide(edge).vertex)

    v = graph.add_vertex()
    labels = {}
    for w in subdividers:
        labels[graph.add_edge(v, w)] = 1
    for offset, a in enumerate(rng.sample(clique_a, into_a)):
        labels[graph.add_edge(v, a)] = 2 + offset
    for offset, b in enumerate(rng.sample(clique_b, into_b)):
        labels[graph.add_edge(v, b)] = 2 + into_a + offset

    loops = -(-(qk - 3) // 2)
    for w in subdividers:
        for _ in range(loops):
            graph.subdivide(graph.add_edge(w, w))

    terminals = frozenset(clique_a) | frozenset(clique_b)
    reserve = frozenset(subdividers)
    instance = CounterexampleInstance(
        graph=graph,
        terminals=terminals,
        reserve=reserve,
        v=v,
        subpartition=EdgeSubpartition(at=v, k=k, labels=labels),
        params=params,
        clique_a=frozenset(clique_a),
        clique_b=frozenset(clique_b),
        x_subdividers=reserve,
        y_edges=y_edges,
    )
    if params.below_conjecture_range:
        logger.info("Q=%d lies below the conjecture's stated range Q >= 30", q)
    logger.debug("Built counterexample instance %s", instance.summary())
    return instance


def build_lau_counterexample(q: int, k: int, seed: int = 0) -> CounterexampleInstance:
    """Build the counterexample for parameters (Q, k).

    Args:
        q: Degree multiplier, at least 4
        k: Number of S-subgraphs, at least 3
        seed: Seed for the A-B edge choices and v's clique neighbors

    Returns:
        CounterexampleInstance: Graph, S, R, v and the labels at v
    """
    return _build(CounterexampleParams(q, k, seed))


def build_control_instance(q: int, k: int, seed: int = 0) -> CounterexampleInstance:
    """Same construction with k-1 direct A-B edges, so counting no longer forbids."""
    return _build(CounterexampleParams(q, k, seed, control=True))


def audit_counterexample(inst: CounterexampleInstance) -> list[str]:
    """Structural invariants the instance violates (empty when all hold)."""
    params = inst.params
    q, k, qk = params.q, params.k, params.qk
    graph = inst.graph
    violations = []

    if len(inst.clique_a) != qk + 1 or len(inst.clique_b) != qk + 1:
        violations.append("clique-size")
    if len(inst.x_subdividers) != qk - k + 1:
        violations.append("x-count")
    expected_y = k - 1 if params.control else k - (k - 1) // 2 - 1
    if len(inst.y_edges) != expected_y:
        violations.append("y-count")
    if graph.degree(inst.v) != qk:
        violations.append("degree-v")
    if any(graph.incident_edge_count(r) < qk for r in inst.reserve):
        violations.append("reserve-incidence")
    if inst.terminals & inst.reserve:
        violations.append("s-r-disjoint")
    if any(graph.is_loop(e) for e in graph.edges):
        violations.append("loopless")

    labels = sorted(inst.subpartition.labels.values())
    expected = [1] * len(inst.x_subdividers) + list(range(2, k + 1))
    if labels != expected:
        violations.append("label-multiset")
    if violations:
        logger.warning("Counterexample (Q=%d, k=%d) violates %s", q, k, violations)
    return violations


def check_neighborhood_condition(inst: CounterexampleInstance) -> bool:
    """N(v) lies in S and R, degree(v) <= Qk and v is in neither S nor R."""
    allowed = inst.terminals | inst.reserve
    return (
        inst.graph.neighbors(inst.v) <= allowed
        and inst.graph.degree(inst.v) <= inst.params.qk
        and inst.v not in allowed
    )


def condition2_cut_values(inst: CounterexampleInstance) -> dict[VertexId, int]:
    """Minimum cut separating {v, r} from S, for each r in R."""
    values = {}
    for r in sorted(inst.reserve):
        values[r] = constrained_min_cut(inst.graph, (inst.v, r), inst.terminals).value
        logger.debug("Constrained cut for r=%d is %d", r, values[r])
    return values


def check_condition2(inst: CounterexampleInstance) -> bool:
    """No cut of size at most Qk puts v and some r opposite all of S."""
    return all(
        value > inst.params.qk for value in condition2_cut_values(inst).values()
    )


def bottleneck_certificate(inst: CounterexampleInstance) -> BottleneckReport:
    """Run the counting argument and measure the Steiner connectivity of S."""
    required = inst.params.k - 1
    available = len(inst.y_edges)
    verdict = (
        BottleneckVerdict.IMPOSSIBLE
        if available < required
        else BottleneckVerdict.INCONCLUSIVE
    )
    connectivity = steiner_connectivity(inst.graph, inst.terminals).value
    return BottleneckReport(
        verdict=verdict,
        required=required,
        available=available,
        steiner_connectivity=connectivity,
        qk=inst.params.qk,
    )


def exhaustive_refute(
    inst: CounterexampleInstance, budget: int = DEFAULT_BUDGET
) -> RefutationResult:
    """Search exhaustively for k S-subgraphs extending the labels at v.

    Raises:
        PreconditionError: If Q*k is too large for exhaustive search
        InternalInvariantError: If a non-control instance turns out extendable
    """
    if inst.params.qk > REFUTE_MAX_QK:
        raise PreconditionError(
            f"Exhaustive refutation is limited to Q*k <= {REFUTE_MAX_QK}"
        )
    result = exact_pack(
        inst.graph,
        inst.terminal_system,
        inst.params.k,
        extend=inst.subpartition,
        budget=budget,
    )
    refutation = RefutationResult(
        verdict=result.verdict,
        nodes=result.nodes,
        packing=result.packing,
        control=inst.params.control,
    )
    if result.verdict is SearchVerdict.FEASIBLE and not inst.params.control:
        logger.critical(
            "Counterexample (Q=%d, k=%d, seed=%d) admits an extension",
            inst.params.q,
            inst.params.k,
            inst.params.seed,
        )
        raise InternalInvariantError(
            "Exhaustive search extended the counterexample's subpartition"
        )
    return refutation


def audit_instance(
    inst: CounterexampleInstance,
    refute: bool = False,
    budget: int = DEFAULT_BUDGET,
) -> CounterexampleAudit:
    """Run every check on an instance, optionally with the exhaustive search."""
    cut_values = condition2_cut_values(inst)
    audit = CounterexampleAudit(
        violations=audit_counterexample(inst),
        neighborhood=check_neighborhood_condition(inst),
        condition2=all(value > inst.params.qk for value in cut_values.values()),
        cut_values=cut_values,
        bottleneck=bottleneck_certificate(inst),
    )
    if refute:
        audit.refutation = exhaustive_refute(inst, budget)
    return audit
