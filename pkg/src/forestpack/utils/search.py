"""Exact desk-scale packing search.

The search assigns edges to classes until every class satisfies its requirements:

- every terminal group is connected by the class;
- with an extension vertex v, the neighbors of v in the class are connected in
  the class minus v (so v is not a cut vertex of the class);
- every balanced vertex u keeps sum over classes of max(2, used) <= incidence(u).

At each node the class graphs are contracted along their assigned edges and the
smallest cut separating an unsatisfied requirement is computed with unit flows
over the edges that class may still take. A zero cut prunes the node. Otherwise
the search branches over the cut edges e_1..e_m: branch j gives e_j to the class
and forbids e_1..e_(j-1) to it, which enumerates every completion exactly once.
"""

import logging
from collections import defaultdict
from typing import Iterable, Optional

from networkx.utils import UnionFind

from forestpack.models.errors import InternalInvariantError, PreconditionError
from forestpack.models.graph import EdgeId, MultiGraph, TerminalSystem, VertexId
from forestpack.models.packing_models import (
    DEFAULT_BUDGET,
    EdgeSubpartition,
    Packing,
    PackingMeta,
    SearchResult,
    SearchVerdict,
)
from forestpack.utils.connectivity import unit_flow
from forestpack.utils.packing import verify_packing

logger = logging.getLogger(__name__)

MAX_SEARCH_EDGES = 800

_DONE = "done"
_DEAD = "dead"


class _BudgetExceeded(Exception):
    pass


class PackingSearch:
    """Backtracking search for k edge-disjoint classes meeting all constraints.

    Attributes:
        nodes: Search nodes expanded so far
    """

    def __init__(
        self,
        graph: MultiGraph,
        terminals: TerminalSystem,
        k: int,
        extend: Optional[EdgeSubpartition] = None,
        balance: Iterable[VertexId] = (),
        forbid_fake: bool = False,
        budget: int = DEFAULT_BUDGET,
        break_symmetry: bool = True,
    ):
        """Prepare a search.

        Args:
            graph: Host graph
            terminals: Groups every class must connect
            k: Number of classes
            extend: Subpartition to extend; pins P_i into class i
            balance: Vertices to balance
            forbid_fake: Never use flagged fake edges
            budget: Maximum number of search nodes
            break_symmetry: Treat untouched unpinned classes as interchangeable
        """
        if k < 1:
            raise PreconditionError("Packing search needs k >= 1")
        if budget <= 0:
            raise PreconditionError("Search budget must be positive")
        terminals.validate(graph)
        if extend is not None:
            extend.validate(graph)
            if extend.k != k:
                raise PreconditionError(
                    f"Subpartition has k={extend.k} but the search uses k={k}"
                )
        self.balance = frozenset(balance)
        for vertex in self.balance:
            if not graph.has_vertex(vertex):
                raise PreconditionError(f"Balance vertex {vertex} is not in the graph")

        self.graph = graph
        self.terminals = terminals
        self.k = k
        self.extend = extend
        self.forbid_fake = forbid_fake
        self.budget = budget
        self.break_symmetry = break_symmetry
        self.nodes = 0

        self.groups = [group for group in terminals.groups if len(group) >= 2]
        self.ends = {e: graph.endpoints(e) for e in graph.edges}
        self.free: dict[EdgeId, None] = {
            e: None
            for e in sorted(graph.edges)
            if self.ends[e][0] != self.ends[e][1]
            and not (forbid_fake and graph.is_fake(e))
        }
        if len(self.free) > MAX_SEARCH_EDGES:
            raise PreconditionError(
                f"{len(self.free)} edges exceed the exact search limit "
                f"of {MAX_SEARCH_EDGES}"
            )
        self.assigned: list[set[EdgeId]] = [set() for _ in range(k)]
        self.excluded: list[set[EdgeId]] = [set() for _ in range(k)]
        self.pinned: frozenset[int] = frozenset()
        self.capacity = {v: graph.incident_edge_count(v) for v in self.balance}
        self.used: dict[tuple[VertexId, int], int] = defaultdict(int)
        self.load = {v: 2 * k for v in self.balance}

    # State changes

    def _load_delta(self, vertex: VertexId, index: int, step: int) -> int:
        before = self.used[(vertex, index)]
        return max(2, before + step) - max(2, before)

    def _assign(self, edge: EdgeId, index: int) -> bool:
        """Give an edge to a class; refuse if a balanced vertex would overflow."""
        touched = set(self.ends[edge]) & self.balance
        for vertex in touched:
            if self.load[vertex] + self._load_delta(vertex, index, 1) > self.capacity[
                vertex
            ]:
                return False
        for vertex in touched:
            self.load[vertex] += self._load_delta(vertex, index, 1)
            self.used[(vertex, index)] += 1
        self.assigned[index].add(edge)
        self.free.pop(edge, None)
        return True

    def _unassign(self, edge: EdgeId, index: int) -> None:
        for vertex in set(self.ends[edge]) & self.balance:
            self.load[vertex] += self._load_delta(vertex, index, -1)
            self.used[(vertex, index)] -= 1
        self.assigned[index].discard(edge)
        if self.ends[edge][0] != self.ends[edge][1]:
            self.free[edge] = None

    def _pin(self) -> bool:
        if any(self.load[v] > self.capacity[v] for v in self.balance):
            return False
        if self.extend is None:
            return True
        pinned = set()
        for edge, label in sorted(self.extend.labels.items()):
            if not label:
                continue
            if self.forbid_fake and self.graph.is_fake(edge):
                return False
            if not self._assign(edge, label - 1):
                return False
            pinned.add(label - 1)
        self.pinned = frozenset(pinned)
        return True

    # Node evaluation

    def _untouched(self, index: int) -> bool:
        return (
            index not in self.pinned
            and not self.assigned[index]
            and not self.excluded[index]
        )

    def _classes_to_examine(self) -> list[int]:
        if not self.break_symmetry:
            return list(range(self.k))
        chosen, seen_untouched = [], False
        for index in range(self.k):
            if self._untouched(index):
                if seen_untouched:
                    continue
                seen_untouched = True
            chosen.append(index)
        return chosen

    def _requirements(self, index: int):
        if self.extend is not None:
            at = self.extend.at
            neighbors = {
                self.ends[e][0] if self.ends[e][1] == at else self.ends[e][1]
                for e in self.assigned[index]
                if at in self.ends[e] and self.ends[e][0] != self.ends[e][1]
            }
            if len(neighbors) >= 2:
                yield neighbors, at
        for group in self.groups:
            yield group, None

    def _requirement_cut(self, index, targets, skip, bound):
        """Smallest cut below `bound` for one requirement of one class.

        Returns:
            _DONE if already satisfied, _DEAD if impossible, None if no cut smaller
            than `bound` exists, else (size, cut edges)
        """
        components = UnionFind()
        for e in self.assigned[index]:
            u, v = self.ends[e]
            if skip is not None and skip in (u, v):
                continue
            components.union(u, v)
        roots = sorted({components[t] for t in targets})
        if len(roots) == 1:
            return _DONE

        adjacency = defaultdict(list)
        excluded = self.excluded[index]
        for e in self.free:
            if e in excluded:
                continue
            u, v = self.ends[e]
            if skip is not None and skip in (u, v):
                continue
            ru, rv = components[u], components[v]
            if ru != rv:
                adjacency[ru].append((e, rv))
                adjacency[rv].append((e, ru))

        best = None
        source = roots[0]
        for other in roots[1:]:
            value, side = unit_flow(adjacency, (source,), (other,), limit=bound)
            if value == 0:
                return _DEAD
            if side is None:
                continue
            bound = value
            best = (value, side)
        if best is None:
            return None
        value, side = best
        crossing = sorted(
            {
                e
                for node in side
                for e, far in adjacency[node]
                if far not in side
            }
        )
        return value, crossing

    def _evaluate(self):
        best = None
        for index in self._classes_to_examine():
            for targets, skip in self._requirements(index):
                bound = best[0] if best is not None else None
                outcome = self._requirement_cut(index, targets, skip, bound)
                if outcome is _DEAD:
                    return _DEAD
                if outcome is _DONE or outcome is None:
                    continue
                best = (outcome[0], index, outcome[1])
        return _DONE if best is None else best

    def _representatives(self, edges: list[EdgeId]) -> list[EdgeId]:
        """Drop edges parallel to an earlier edge in the same state."""
        seen, kept = set(), []
        for e in edges:
            u, v = self.ends[e]
            signature = (
                min(u, v),
                max(u, v),
                self.graph.is_fake(e),
                tuple(e in excluded for excluded in self.excluded),
            )
            if signature not in seen:
                seen.add(signature)
                kept.append(e)
        return kept

    def _search(self) -> bool:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExceeded
        outcome = self._evaluate()
        if outcome is _DONE:
            return True
        if outcome is _DEAD:
            return False

        _, index, cut = outcome
        peers = []
        if self.break_symmetry and self._untouched(index):
            peers = [j for j in range(self.k) if j != index and self._untouched(j)]

        undo: list[tuple[int, EdgeId]] = []
        found = False
        for edge in self._representatives(cut):
            if self._assign(edge, index):
                if self._search():
                    found = True
                    break
                self._unassign(edge, index)
            for j in [index, *peers]:
                if edge not in self.excluded[j]:
                    self.excluded[j].add(edge)
                    undo.append((j, edge))
        for j, edge in undo:
            self.excluded[j].discard(edge)
        return found

    # Driver

    def _canonical_classes(self) -> list[frozenset[EdgeId]]:
        classes = [frozenset(edges) for edges in self.assigned]
        free_slots = [i for i in range(self.k) if i not in self.pinned]
        movable = sorted(
            (classes[i] for i in free_slots),
            key=lambda edges: (not edges, min(edges) if edges else 0),
        )
        for slot, edges in zip(free_slots, movable, strict=True):
            classes[slot] = edges
        return classes

    def run(self) -> SearchResult:
        """Run the search to completion or until the budget is spent."""
        if not self._pin():
            logger.debug("Pinned edges already violate the constraints")
            return SearchResult(SearchVerdict.INFEASIBLE, nodes=0)
        try:
            found = self._search()
        except _BudgetExceeded:
            logger.info("Packing search hit its budget of %d nodes", self.budget)
            return SearchResult(SearchVerdict.TIMEOUT, nodes=self.budget)
        if not found:
            logger.debug("Packing search exhausted after %d nodes", self.nodes)
            return SearchResult(SearchVerdict.INFEASIBLE, nodes=self.nodes)

        classes = self._canonical_classes()
        fake_used = frozenset(
            e for edges in classes for e in edges if self.graph.is_fake(e)
        )
        packing = Packing(
            k=self.k,
            classes=classes,
            extended_at=self.extend.at if self.extend is not None else None,
            meta=PackingMeta(balanced=self.balance, fake_edges_used=fake_used),
        )
        report = verify_packing(
            self.graph,
            self.terminals,
            packing,
            extend=self.extend,
            balance=self.balance,
            forbid_fake=self.forbid_fake,
        )
        if not report.is_valid:
            logger.critical("Search produced an invalid packing: %s", report.issues)
            raise InternalInvariantError("Exact search returned an invalid packing")
        logger.debug("Packing found after %d nodes", self.nodes)
        return SearchResult(SearchVerdict.FEASIBLE, packing=packing, nodes=self.nodes)


def exact_pack(
    graph: MultiGraph,
    terminals: TerminalSystem,
    k: int,
    extend: Optional[EdgeSubpartition] = None,
    balance: Iterable[VertexId] = (),
    forbid_fake: bool = False,
    budget: int = DEFAULT_BUDGET,
    break_symmetry: bool = True,
) -> SearchResult:
    """Search exhaustively for k edge-disjoint classes connecting every group.

    Args:
        graph: Host graph
        terminals: Groups every class must connect
        k: Number of classes
        extend: Subpartition the packing must extend
        balance: Vertices whose induced subpartitions must be balanced
        forbid_fake: Never use flagged fake edges
        budget: Maximum number of search nodes before TIMEOUT
        break_symmetry: Treat untouched unpinned classes as interchangeable

    Returns:
        SearchResult: FEASIBLE with a verified packing, INFEASIBLE after an
        exhaustive search, or TIMEOUT
    """
    search = PackingSearch(
        graph,
        terminals,
        k,
        extend=extend,
        balance=balance,
        forbid_fake=forbid_fake,
        budget=budget,
        break_symmetry=break_symmetry,
    )
    return search.run()
