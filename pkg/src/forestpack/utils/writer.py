"""Writer for the multigraph file format read by forestpack.utils.parser."""

from pathlib import Path
from typing import Optional

from forestpack.models.graph import EdgeKind, MultiGraph, TerminalSystem


class GraphFileWriter:
    """Serialize a graph and its terminal system.

    Vertices are written explicitly so isolated vertices survive a round trip.
    Groups are numbered 0..t-1 in their TerminalSystem order.

    Attributes:
        graph: Graph to write
        terminals: Terminal system to write, if any
        comment: Optional comment line placed after the header
    """

    def __init__(
        self,
        graph: MultiGraph,
        terminals: Optional[TerminalSystem] = None,
        comment: Optional[str] = None,
    ):
        """Initialize the writer.

        Args:
            graph: Graph to write
            terminals: Terminal system to write
            comment: Comment placed after the header
        """
        self.graph = graph
        self.terminals = terminals
        self.comment = comment
        self.output_lines: list[str] = []

    def render(self) -> str:
        """Build the file content."""
        self.output_lines = [f"mg {self.graph.number_of_vertices()}\n"]
        if self.comment:
            self.output_lines.extend(
                f"# {line}\n" for line in self.comment.splitlines()
            )
        self.output_lines.extend(f"v {v}\n" for v in sorted(self.graph.vertices))
        for e in sorted(self.graph.edges):
            u, v = self.graph.endpoints(e)
            kind = self.graph.kind(e)
            suffix = "" if kind is EdgeKind.REGULAR else f" {kind.value}"
            self.output_lines.append(f"e {e} {u} {v}{suffix}\n")
        if self.terminals is not None:
            for index, group in enumerate(self.terminals.groups):
                self.output_lines.extend(f"S {index} {v}\n" for v in sorted(group))
            self.output_lines.extend(f"R {v}\n" for v in sorted(self.terminals.reserve))
        return "".join(self.output_lines)

    def write(self, file_path: Path) -> None:
        """Write the content to `file_path`."""
        with open(file_path, "w", encoding="utf-8") as f:
            f.write(self.render())


def save_graph(
    path: Path,
    graph: MultiGraph,
    terminals: Optional[TerminalSystem] = None,
    comment: Optional[str] = None,
) -> None:
    """Write a graph file that load_graph reads back with identical ids."""
    GraphFileWriter(graph, terminals, comment).write(Path(path))
