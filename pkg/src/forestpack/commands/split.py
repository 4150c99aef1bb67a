"""Split command implementation for the forestpack CLI."""

from pathlib import Path
from typing import Optional

from rich.console import Console

from forestpack.models.errors import ForestpackError
from forestpack.models.run_models import CommandType, ExitCode
from forestpack.utils.output import format_error, format_success
from forestpack.utils.parser import load_graph
from forestpack.utils.reports import build_report, emit_report
from forestpack.utils.transforms import mader_split
from forestpack.utils.writer import save_graph


def split_command(
    graph_path: Path,
    vertex: int,
    save_path: Optional[Path] = None,
    output_path: Optional[Path] = None,
    as_json: bool = False,
    console: Optional[Console] = None,
) -> int:
    """Split off one pair of edges at a vertex.

    Args:
        graph_path: Graph file to read
        vertex: Vertex x to split at
        save_path: Where to write the split graph file
        output_path: Where to write the JSON report
        as_json: Print the JSON report instead of the summary
        console: Console for output

    Returns:
        int: Exit code (0 for success, 1 for errors)
    """
    if console is None:
        console = Console()

    try:
        graph, terminals = load_graph(graph_path)
        split, record = mader_split(graph, vertex)
        if save_path is not None:
            save_graph(
                save_path,
                split,
                terminals,
                comment=f"split off at {vertex} from {graph_path}",
            )
    except (ForestpackError, OSError) as e:
        console.print(format_error(str(e)), style="error")
        return ExitCode.ERROR

    if not as_json:
        y, z = record.endpoints
        console.print(
            format_success(
                f"split edges {record.removed[0]} and {record.removed[1]} at {vertex}"
            )
        )
        console.print(f"  new edge [bullet]{record.added}[/bullet] joins {y} and {z}")
        if save_path is not None:
            console.print(f"  graph written to [path]{save_path}[/path]")
    payload = build_report(
        CommandType.SPLIT, graph=str(graph_path), split=record.to_dict()
    )
    emit_report(console, payload, output_path, as_json)
    return ExitCode.SUCCESS
