"""Models for the (k,g)-family feasibility audit.

A (k,g)-family is only audited through its feasibility functional; the families
themselves are never constructed.
"""

from dataclasses import dataclass, field
from typing import Optional

from forestpack.models.graph import VertexId

KG_AUDIT_BOUND = 12


@dataclass(frozen=True)
class ParityFunction:
    """Nonnegative counts g(v), with g(v) congruent to the degree off S.

    Attributes:
        values: Map from every vertex to g(v)
    """

    values: dict[VertexId, int] = field(default_factory=dict)

    def __call__(self, vertex: VertexId) -> int:
        """Return g(vertex); vertices not listed count 0."""
        return self.values.get(vertex, 0)

    def total(self, vertices) -> int:
        """Sum of g over a vertex set."""
        return sum(self(v) for v in vertices)


@dataclass(frozen=True)
class AdmissiblePartition:
    """Disjoint blocks covering S, each meeting S, plus the outside set.

    Attributes:
        blocks: A_1..A_l, ordered by minimum member
        outside: B_p, every vertex in no block
    """

    blocks: tuple[frozenset[VertexId], ...]
    outside: frozenset[VertexId] = frozenset()

    def __post_init__(self):
        blocks = tuple(sorted((frozenset(b) for b in self.blocks), key=min))
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "outside", frozenset(self.outside))

    def sort_key(self) -> tuple:
        """Lexicographic key used to break ties between equal minima."""
        return (
            tuple(tuple(sorted(block)) for block in self.blocks),
            tuple(sorted(self.outside)),
        )

    def to_dict(self) -> dict:
        """Plain representation for JSON reports."""
        return {
            "blocks": [sorted(block) for block in self.blocks],
            "outside": sorted(self.outside),
        }


@dataclass
class KgAudit:
    """Minimum of f_g over every admissible partition.

    Attributes:
        min_value: Smallest value found
        argmin: Lexicographically smallest partition attaining it
        examined: Number of admissible partitions evaluated
    """

    min_value: int
    argmin: Optional[AdmissiblePartition]
    examined: int = 0

    @property
    def nonnegative(self) -> bool:
        """Whether the functional never goes below zero."""
        return self.min_value >= 0

    def to_dict(self) -> dict:
        """Plain representation for JSON reports."""
        return {
            "min_value": self.min_value,
            "argmin": self.argmin.to_dict() if self.argmin else None,
            "examined": self.examined,
        }


@dataclass
class TreePackingHypotheses:
    """Which hypotheses of the tree-packing lemma an instance meets.

    Attributes:
        s_connected: S is 3k-edge-connected
        degree_three: Every vertex outside S has degree 3
        independent: No edge joins two vertices outside S
        deleted_within_k: At most k edges are deleted
        connectivity: Measured Steiner connectivity of S, None when |S| < 2
    """

    s_connected: bool
    degree_three: bool
    independent: bool
    deleted_within_k: bool
    connectivity: Optional[int] = None

    @property
    def holds(self) -> bool:
        return (
            self.s_connected
            and self.degree_three
            and self.independent
            and self.deleted_within_k
        )

    def to_dict(self) -> dict:
        """Plain representation for JSON reports."""
        return {
            "s_connected": self.s_connected,
            "degree_three": self.degree_three,
            "independent": self.independent,
            "deleted_within_k": self.deleted_within_k,
            "connectivity": self.connectivity,
            "holds": self.holds,
        }
