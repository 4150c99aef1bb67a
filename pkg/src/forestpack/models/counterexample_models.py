"""Models for the extension-theorem counterexample and its checks."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from forestpack.models.graph import EdgeId, MultiGraph, TerminalSystem, VertexId
from forestpack.models.packing_models import EdgeSubpartition, Packing, SearchVerdict

# The conjectured extension theorem is stated for Q >= 30
CONJECTURE_MIN_Q = 30
# Exhaustive refutation is attempted only for Q*k up to this value
REFUTE_MAX_QK = 12


@dataclass(frozen=True)
class CounterexampleParams:
    """Parameters of one generated instance.

    Attributes:
        q: Degree multiplier Q
        k: Number of S-subgraphs
        seed: Seed driving every arbitrary choice
        control: Build the control variant with k-1 direct A-B edges
    """

    q: int
    k: int
    seed: int = 0
    control: bool = False

    @property
    def qk(self) -> int:
        return self.q * self.k

    @property
    def below_conjecture_range(self) -> bool:
        """Whether Q lies below the range the conjecture is stated for."""
        return self.q < CONJECTURE_MIN_Q

    def to_dict(self) -> dict:
        """Plain representation for JSON reports."""
        return {
            "Q": self.q,
            "k": self.k,
            "seed": self.seed,
            "control": self.control,
            "below_conjecture_range": self.below_conjecture_range,
        }


@dataclass
class CounterexampleInstance:
    """Two cliques joined through subdivided edges and a degree-Qk vertex v.

    Attributes:
        graph: The loopless host graph
        terminals: S, the union of both cliques
        reserve: R, the subdividers of the X edges
        v: Vertex whose subpartition must be extended
        subpartition: Labels at v
        params: Generation parameters
        clique_a: Vertices of clique A
        clique_b: Vertices of clique B
        x_subdividers: Subdivision vertices of the X edges (equal to R)
        y_edges: Direct A-B edges left unsubdivided
    """

    graph: MultiGraph
    terminals: frozenset[VertexId]
    reserve: frozenset[VertexId]
    v: VertexId
    subpartition: EdgeSubpartition
    params: CounterexampleParams
    clique_a: frozenset[VertexId] = frozenset()
    clique_b: frozenset[VertexId] = frozenset()
    x_subdividers: frozenset[VertexId] = frozenset()
    y_edges: frozenset[EdgeId] = frozenset()

    @property
    def terminal_system(self) -> TerminalSystem:
        """S as a single group with R as the reserve set."""
        return TerminalSystem((self.terminals,), self.reserve)

    def summary(self) -> dict:
        """Sizes that identify the instance in reports."""
        return {
            **self.params.to_dict(),
            "vertices": self.graph.number_of_vertices(),
            "edges": self.graph.number_of_edges(),
            "degree_v": self.graph.degree(self.v),
            "x_count": len(self.x_subdividers),
            "y_count": len(self.y_edges),
        }


class BottleneckVerdict(Enum):
    """Outcome of the counting argument."""

    IMPOSSIBLE = "IMPOSSIBLE"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class BottleneckReport:
    """The counting argument that rules out an extension.

    Every X subdivider hangs on v through an edge labeled 1, so it cannot carry
    an A-B connection for another class. Classes 2..k therefore need distinct
    direct A-B edges.

    Attributes:
        verdict: IMPOSSIBLE when fewer direct edges exist than classes need them
        required: Classes needing a direct A-B edge (k-1)
        available: Direct A-B edges (|Y|)
        steiner_connectivity: Measured Steiner connectivity of S
        qk: The value Q*k it is compared against
    """

    verdict: BottleneckVerdict
    required: int
    available: int
    steiner_connectivity: int
    qk: int

    @property
    def connectivity_ok(self) -> bool:
        """Whether S is at least Qk-edge-connected."""
        return self.steiner_connectivity >= self.qk

    def to_dict(self) -> dict:
        """Plain representation for JSON reports."""
        return {
            "verdict": self.verdict.value,
            "required": self.required,
            "available": self.available,
            "steiner_connectivity": self.steiner_connectivity,
            "qk": self.qk,
        }


@dataclass
class RefutationResult:
    """Outcome of the exhaustive extension search on an instance.

    Attributes:
        verdict: INFEASIBLE, TIMEOUT or FEASIBLE
        nodes: Search nodes expanded
        packing: Witness packing when FEASIBLE
        control: Whether the instance was a control instance
    """

    verdict: SearchVerdict
    nodes: int = 0
    packing: Optional[Packing] = None
    control: bool = False

    def to_dict(self) -> dict:
        """Plain representation for JSON reports."""
        return {
            "verdict": self.verdict.value,
            "nodes": self.nodes,
            "control": self.control,
            "packing": self.packing.to_dict() if self.packing else None,
        }


@dataclass
class CounterexampleAudit:
    """Everything checked on one instance.

    Attributes:
        violations: Structural invariants that failed
        neighborhood: N(v) inside S and R, degree(v) <= Qk, v outside S and R
        condition2: Every constrained cut separating v and r from S exceeds Qk
        cut_values: Constrained cut value for each r in R
        bottleneck: The counting report
        refutation: Exhaustive search outcome, when run
    """

    violations: list[str] = field(default_factory=list)
    neighborhood: bool = False
    condition2: bool = False
    cut_values: dict[VertexId, int] = field(default_factory=dict)
    bottleneck: Optional[BottleneckReport] = None
    refutation: Optional[RefutationResult] = None

    @property
    def confirms(self) -> bool:
        """Whether the instance satisfies the conditions yet cannot be extended."""
        return (
            not self.violations
            and self.neighborhood
            and self.condition2
            and self.bottleneck is not None
            and self.bottleneck.verdict is BottleneckVerdict.IMPOSSIBLE
            and self.bottleneck.connectivity_ok
        )

    def to_dict(self) -> dict:
        """Plain representation for JSON reports."""
        return {
            "violations": list(self.violations),
            "neighborhood": self.neighborhood,
            "condition2": self.condition2,
            "cut_values": {
                str(r): value for r, value in sorted(self.cut_values.items())
            },
            "min_cut_value": min(self.cut_values.values(), default=None),
            "bottleneck": self.bottleneck.to_dict() if self.bottleneck else None,
            "refutation": self.refutation.to_dict() if self.refutation else None,
            "confirms": self.confirms,
        }
