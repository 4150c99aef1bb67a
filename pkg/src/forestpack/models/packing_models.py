"""Models for packings, subpartitions and search outcomes.

This module defines the data structures shared by the packing verifiers, the
exact search, the spanning-tree packer and the decompose-and-pack driver.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence

from forestpack.models.errors import PreconditionError
from forestpack.models.graph import EdgeId, MultiGraph, VertexId

DEFAULT_BUDGET = 200_000


class SearchVerdict(Enum):
    """Outcome of a packing search."""

    FEASIBLE = "FEASIBLE"
    INFEASIBLE = "INFEASIBLE"
    TIMEOUT = "TIMEOUT"


@dataclass
class EdgeSubpartition:
    """Labels in {0..k} on the edges incident to one vertex.

    Label 0 means unlabeled; part P_i is the set of edges labeled i.

    Attributes:
        at: The distinguished vertex
        k: Number of parts
        labels: Map from every edge at `at` to its label
    """

    at: VertexId
    k: int
    labels: dict[EdgeId, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.k < 0:
            raise PreconditionError("Subpartition needs k >= 0")
        for edge, label in self.labels.items():
            if not 0 <= label <= self.k:
                raise PreconditionError(
                    f"Edge {edge} has label {label} outside 0..{self.k}"
                )

    @classmethod
    def from_parts(
        cls,
        graph: MultiGraph,
        at: VertexId,
        parts: Sequence[Iterable[EdgeId]],
    ) -> "EdgeSubpartition":
        """Build a subpartition from explicit parts P_1..P_k.

        Edges at `at` not listed in any part are labeled 0.
        """
        labels = dict.fromkeys(graph.incident_edges(at), 0)
        for index, part in enumerate(parts, start=1):
            for edge in part:
                if edge not in labels:
                    raise PreconditionError(f"Edge {edge} is not incident to {at}")
                if labels[edge]:
                    raise PreconditionError(f"Edge {edge} appears in two parts")
                labels[edge] = index
        return cls(at=at, k=len(parts), labels=labels)

    @classmethod
    def from_packing(
        cls, graph: MultiGraph, at: VertexId, packing: "Packing"
    ) -> "EdgeSubpartition":
        """The subpartition a packing induces on the edges at `at`."""
        labels = {}
        for edge in graph.incident_edges(at):
            index = packing.class_of(edge)
            labels[edge] = 0 if index is None else index + 1
        return cls(at=at, k=packing.k, labels=labels)

    def part(self, index: int) -> frozenset[EdgeId]:
        """Edges labeled `index` (1-based)."""
        return frozenset(e for e, label in self.labels.items() if label == index)

    @property
    def parts(self) -> list[frozenset[EdgeId]]:
        """Parts P_1..P_k in order."""
        return [self.part(i) for i in range(1, self.k + 1)]

    @property
    def unlabeled(self) -> frozenset[EdgeId]:
        """Edges carrying label 0."""
        return self.part(0)

    def validate(self, graph: MultiGraph) -> None:
        """Check that `at` is live and every labeled edge is incident to it."""
        if not graph.has_vertex(self.at):
            raise PreconditionError(f"Vertex {self.at} is not in the graph")
        incident = set(graph.incident_edges(self.at))
        stray = sorted(e for e in self.labels if e not in incident)
        if stray:
            raise PreconditionError(f"Edges {stray} are not incident to {self.at}")

    def to_dict(self) -> dict:
        """Plain representation for JSON reports."""
        return {
            "at": self.at,
            "k": self.k,
            "labels": {str(e): label for e, label in sorted(self.labels.items())},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EdgeSubpartition":
        """Inverse of to_dict."""
        return cls(
            at=int(data["at"]),
            k=int(data["k"]),
            labels={int(e): int(label) for e, label in data["labels"].items()},
        )


@dataclass(frozen=True)
class PackingMeta:
    """Metadata attached to a packing.

    Attributes:
        balanced: Vertices the packing was required to balance
        fake_edges_used: Fake edges that appeared in a class before stripping
    """

    balanced: frozenset[VertexId] = frozenset()
    fake_edges_used: frozenset[EdgeId] = frozenset()


@dataclass
class Packing:
    """k edge sets H_1..H_k over a host graph.

    Attributes:
        k: Number of classes
        classes: One edge-id set per class; classes may be empty
        extended_at: Vertex whose subpartition the packing extends, if any
        meta: Balancing and fake-edge metadata
    """

    k: int
    classes: list[frozenset[EdgeId]]
    extended_at: Optional[VertexId] = None
    meta: PackingMeta = field(default_factory=PackingMeta)

    def __post_init__(self):
        self.classes = [frozenset(edges) for edges in self.classes]
        if len(self.classes) != self.k:
            raise PreconditionError(
                f"Packing declares k={self.k} but has {len(self.classes)} classes"
            )

    @property
    def used_edges(self) -> frozenset[EdgeId]:
        """Every edge appearing in some class."""
        return frozenset().union(*self.classes)

    def class_of(self, edge: EdgeId) -> Optional[int]:
        """Index (0-based) of the first class containing `edge`."""
        for index, edges in enumerate(self.classes):
            if edge in edges:
                return index
        return None

    def to_dict(self) -> dict:
        """Plain representation for JSON reports."""
        return {
            "k": self.k,
            "classes": [sorted(edges) for edges in self.classes],
            "extended_at": self.extended_at,
            "balanced": sorted(self.meta.balanced),
            "fake_edges_used": sorted(self.meta.fake_edges_used),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Packing":
        """Inverse of to_dict."""
        return cls(
            k=int(data["k"]),
            classes=[frozenset(int(e) for e in edges) for edges in data["classes"]],
            extended_at=data.get("extended_at"),
            meta=PackingMeta(
                balanced=frozenset(data.get("balanced", ())),
                fake_edges_used=frozenset(data.get("fake_edges_used", ())),
            ),
        )


@dataclass
class ThresholdTable:
    """Memoized values of the recurrence f(3) = 0, f(t) = f(t-1) + 2t + 1."""

    values: dict[int, int] = field(default_factory=lambda: {3: 0})

    def value(self, t: int) -> int:
        """Return f(t), extending the table as needed."""
        if t < 3:
            raise PreconditionError(f"Threshold recurrence starts at t=3, got {t}")
        top = max(self.values)
        while top < t:
            top += 1
            self.values[top] = self.values[top - 1] + 2 * top + 1
        return self.values[t]

    def as_dict(self, upto: int) -> dict[int, int]:
        """Values for t = 3..upto."""
        return {t: self.value(t) for t in range(3, upto + 1)}


@dataclass
class SearchResult:
    """Result of the exact packing search.

    Attributes:
        verdict: FEASIBLE, INFEASIBLE or TIMEOUT
        packing: The packing found when FEASIBLE
        nodes: Search nodes expanded
    """

    verdict: SearchVerdict
    packing: Optional[Packing] = None
    nodes: int = 0

    @property
    def feasible(self) -> bool:
        """Whether a packing was found."""
        return self.verdict is SearchVerdict.FEASIBLE


@dataclass
class SpanningTreeResult:
    """Result of spanning-tree packing.

    Attributes:
        verdict: FEASIBLE or INFEASIBLE
        packing: k spanning trees when FEASIBLE
        witness: Vertex partition violating the Tutte-Nash-Williams bound
        crossing: Number of edges between witness parts
    """

    verdict: SearchVerdict
    packing: Optional[Packing] = None
    witness: tuple[frozenset[VertexId], ...] = ()
    crossing: int = 0

    @property
    def feasible(self) -> bool:
        """Whether k spanning trees were found."""
        return self.verdict is SearchVerdict.FEASIBLE


class BaseSolver(Enum):
    """Solver used for the base cases of decompose_and_pack."""

    EXACT = "exact"
    SPANNING = "spanning"


@dataclass(frozen=True)
class DecomposeConfig:
    """Configuration of the decompose-and-pack driver.

    Attributes:
        q: Degree multiplier Q; fake edges pad the boundary vertex to Q*k
        joint_threshold: Merge all groups once they are jointly this many times k
            connected
        base: Base-case solver
        budget: Node budget per exact search
        reserve_degree_factor: A contracted vertex with at least this many times k
            incident edges joins the reserve set
        use_fake_edges: Whether to pad boundary vertices with fake edges
    """

    q: int = 36
    joint_threshold: int = 7
    base: BaseSolver = BaseSolver.EXACT
    budget: int = DEFAULT_BUDGET
    reserve_degree_factor: int = 34
    use_fake_edges: bool = True

    def __post_init__(self):
        if self.q < 1 or self.joint_threshold < 1:
            raise PreconditionError("Q and the joint threshold must be positive")
        if self.budget <= 0:
            raise PreconditionError("Search budget must be positive")


class TraceAction(Enum):
    """Kinds of steps recorded by the decompose-and-pack driver."""

    BASE = "base"
    SPLIT = "split"
    EXTEND = "extend"
    MERGE = "merge"
    WARNING = "warning"
    FAIL = "fail"


@dataclass(frozen=True)
class TraceStep:
    """One step of the recursion.

    Attributes:
        depth: Recursion depth
        action: Kind of step
        detail: Human-readable description
        stands_in_for: Existence result the step substitutes, if any
    """

    depth: int
    action: TraceAction
    detail: str
    stands_in_for: str = ""

    def to_dict(self) -> dict:
        """Plain representation for JSON reports."""
        return {
            "depth": self.depth,
            "action": self.action.value,
            "detail": self.detail,
            "stands_in_for": self.stands_in_for,
        }


@dataclass
class DecomposeResult:
    """Outcome of decompose_and_pack.

    Attributes:
        packing: The validated packing, or None on failure
        trace: Every recursion step in order
        error: Reason for failure
        verdict: Verdict of the search that failed, if a search failed
    """

    packing: Optional[Packing] = None
    trace: list[TraceStep] = field(default_factory=list)
    error: Optional[str] = None
    verdict: Optional[SearchVerdict] = None

    @property
    def success(self) -> bool:
        """Whether a packing was produced."""
        return self.error is None and self.packing is not None
