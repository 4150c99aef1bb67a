"""Strict parser for the line-oriented multigraph file format.

Records, one per line:

    mg <n_hint>          header, first record
    v <id>               explicit vertex (vertices named by edges are implicit)
    e <id> <u> <v> [k]   edge; u = v is a loop; optional kind `fake` or `loop`
    S <group> <vertex>   terminal membership
    R <vertex>           reserve membership
    # ...                comment (also allowed after a record)

The module also parses the id-list and label option values used by the CLI.
"""

import re
from pathlib import Path
from typing import Iterable, Optional

from forestpack.models.errors import (
    GraphParseError,
    PreconditionError,
    TerminalSystemError,
)
from forestpack.models.graph import EdgeKind, MultiGraph, TerminalSystem, VertexId
from forestpack.models.packing_models import EdgeSubpartition


class GraphFileParser:
    """Parser for graph files.

    Attributes:
        file_path: File being parsed, used in error messages
    """

    # Regular expressions for parsing
    HEADER_PATTERN = re.compile(r"^mg\s+(\d+)$")
    VERTEX_PATTERN = re.compile(r"^v\s+(\d+)$")
    EDGE_PATTERN = re.compile(r"^e\s+(\d+)\s+(\d+)\s+(\d+)(?:\s+(fake|loop))?$")
    TERMINAL_PATTERN = re.compile(r"^S\s+(\d+)\s+(\d+)$")
    RESERVE_PATTERN = re.compile(r"^R\s+(\d+)$")

    def __init__(self, file_path: Optional[Path] = None):
        """Initialize the parser.

        Args:
            file_path: The path to the graph file
        """
        self.file_path = file_path
        self.graph = MultiGraph()
        self.groups: dict[int, set[VertexId]] = {}
        self.reserve: set[VertexId] = set()
        self.declared: set[VertexId] = set()
        self.size_hint: Optional[int] = None
        self.line_number = 0

    def _error(self, message: str) -> GraphParseError:
        return GraphParseError(message, self.line_number, self.file_path)

    def _ensure_vertex(self, vertex: VertexId) -> None:
        if not self.graph.has_vertex(vertex):
            self.graph.add_vertex(vertex)

    def parse(self) -> tuple[MultiGraph, TerminalSystem]:
        """Read and parse `file_path`."""
        with open(self.file_path, "rb") as f:
            data = f.read()
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as e:
            self.line_number = data.count(b"\n", 0, e.start) + 1
            raise self._error(f"Invalid UTF-8 at byte {e.start}") from e
        return self.parse_lines(text.splitlines())

    def parse_lines(self, lines: Iterable[str]) -> tuple[MultiGraph, TerminalSystem]:
        """Parse records into a graph and a terminal system.

        Returns:
            tuple: (graph, terminals) with groups ordered by group index

        Raises:
            GraphParseError: On a malformed record, a duplicate id or a missing
                header, naming the line
            TerminalSystemError: If groups overlap, meet the reserve set or name
                vertices absent from the graph
        """
        members: list[tuple[int, VertexId]] = []
        for number, raw in enumerate(lines, start=1):
            self.line_number = number
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue

            header = self.HEADER_PATTERN.match(line)
            if header:
                if self.size_hint is not None:
                    raise self._error("Duplicate header")
                self.size_hint = int(header.group(1))
                continue
            if self.size_hint is None:
                raise self._error("Expected header 'mg <n>' before any record")

            vertex = self.VERTEX_PATTERN.match(line)
            if vertex:
                vid = int(vertex.group(1))
                if vid in self.declared:
                    raise self._error(f"Duplicate vertex id {vid}")
                self.declared.add(vid)
                self._ensure_vertex(vid)
                continue

            edge = self.EDGE_PATTERN.match(line)
            if edge:
                eid, u, v = (int(edge.group(i)) for i in (1, 2, 3))
                if self.graph.has_edge(eid):
                    raise self._error(f"Duplicate edge id {eid}")
                kind = EdgeKind(edge.group(4)) if edge.group(4) else EdgeKind.REGULAR
                self._ensure_vertex(u)
                self._ensure_vertex(v)
                self.graph.add_edge(u, v, edge=eid, kind=kind)
                continue

            terminal = self.TERMINAL_PATTERN.match(line)
            if terminal:
                group, vid = int(terminal.group(1)), int(terminal.group(2))
                if vid in self.groups.get(group, ()):
                    raise self._error(f"Vertex {vid} listed twice in group {group}")
                self.groups.setdefault(group, set()).add(vid)
                members.append((self.line_number, vid))
                continue

            reserve = self.RESERVE_PATTERN.match(line)
            if reserve:
                self.reserve.add(int(reserve.group(1)))
                continue

            raise self._error(f"Unrecognized record: {line!r}")

        if self.size_hint is None:
            self.line_number = 0
            raise self._error("Missing header 'mg <n>'")

        terminals = TerminalSystem(
            tuple(frozenset(self.groups[i]) for i in sorted(self.groups)),
            frozenset(self.reserve),
        )
        missing = [(n, vid) for n, vid in members if not self.graph.has_vertex(vid)]
        if missing:
            line_number, vid = missing[0]
            raise TerminalSystemError(
                "live-members", f"line {line_number}: vertex {vid} is not in the graph"
            )
        terminals.validate(self.graph)
        return self.graph, terminals


def load_graph(path: Path) -> tuple[MultiGraph, TerminalSystem]:
    """Load a graph file with strict validation."""
    return GraphFileParser(Path(path)).parse()


def loads_graph(text: str) -> tuple[MultiGraph, TerminalSystem]:
    """Parse graph file content held in memory."""
    return GraphFileParser().parse_lines(text.splitlines())


ID_LIST_PATTERN = re.compile(r"^\d+(?:,\d+)*$")
LABEL_PATTERN = re.compile(r"^(\d+)=(\d+)$")


def parse_id_list(text: Optional[str]) -> list[int]:
    """Parse a comma-separated id list such as `3,7,9`.

    Raises:
        PreconditionError: If the text is not a list of nonnegative integers
    """
    if text is None or not text.strip():
        return []
    text = text.replace(" ", "")
    if not ID_LIST_PATTERN.match(text):
        raise PreconditionError(f"Expected comma-separated ids, got '{text}'")
    return [int(item) for item in text.split(",")]


def parse_cut_sides(text: str) -> tuple[list[int], list[int]]:
    """Parse `A:B`, two comma-separated vertex lists."""
    side_a, sep, side_b = text.partition(":")
    if not sep:
        raise PreconditionError(f"Expected A:B vertex lists, got '{text}'")
    return parse_id_list(side_a), parse_id_list(side_b)


def parse_extend(text: str, graph: MultiGraph, k: int) -> EdgeSubpartition:
    """Parse `v:e=label,...` into a subpartition at v.

    Edges at v that are not listed get label 0.
    """
    head, sep, body = text.partition(":")
    if not sep or not head.strip().isdigit():
        raise PreconditionError(f"Expected v:edge=label,... got '{text}'")
    at = int(head)
    if not graph.has_vertex(at):
        raise PreconditionError(f"Vertex {at} is not in the graph")
    labels = dict.fromkeys(graph.incident_edges(at), 0)
    for item in filter(None, body.replace(" ", "").split(",")):
        match = LABEL_PATTERN.match(item)
        if not match:
            raise PreconditionError(f"Invalid edge label '{item}'")
        edge, label = int(match.group(1)), int(match.group(2))
        if edge not in labels:
            raise PreconditionError(f"Edge {edge} is not incident to {at}")
        labels[edge] = label
    return EdgeSubpartition(at=at, k=k, labels=labels)
