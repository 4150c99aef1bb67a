"""Cut command implementation for the forestpack CLI.

This module provides the 'cut' command, which reports a minimum cut of a graph
file: the Steiner cut of a single group, the minimum cut separating several
groups, or a cut constrained by explicit vertex seeds.
"""

from pathlib import Path
from typing import Optional

from rich.console import Console

from forestpack.models.errors import ForestpackError, PreconditionError
from forestpack.models.graph import TerminalSystem
from forestpack.models.run_models import CommandType, ExitCode
from forestpack.utils.connectivity import (
    constrained_min_cut,
    min_terminal_separating_cut,
    steiner_connectivity,
)
from forestpack.utils.output import format_error
from forestpack.utils.parser import load_graph, parse_cut_sides, parse_id_list
from forestpack.utils.reports import build_report, emit_report


def _select_groups(terminals: TerminalSystem, groups: Optional[str]) -> TerminalSystem:
    indices = parse_id_list(groups)
    if not indices:
        return terminals
    for index in indices:
        if index >= terminals.group_count:
            raise PreconditionError(
                f"Group {index} does not exist; the file has {terminals.group_count}"
            )
    return terminals.restricted_to(sorted(set(indices)))


def cut_command(
    graph_path: Path,
    groups: Optional[str] = None,
    constrain: Optional[str] = None,
    output_path: Optional[Path] = None,
    as_json: bool = False,
    console: Optional[Console] = None,
) -> int:
    """Report a minimum cut of a graph file.

    With --constrain the cut keeps the two vertex lists apart. Otherwise one
    selected group gives its Steiner cut and several groups give the minimum
    cut that separates them while keeping each group whole.

    Args:
        graph_path: Graph file to read
        groups: Comma-separated group indices, all groups when omitted
        constrain: `A:B` vertex lists for a constrained cut
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
        group_split = None
        if constrain:
            side_a, side_b = parse_cut_sides(constrain)
            result = constrained_min_cut(graph, side_a, side_b)
            kind = "constrained"
        else:
            selected = _select_groups(terminals, groups)
            if selected.group_count == 0:
                raise PreconditionError("The graph file declares no terminal groups")
            if selected.group_count == 1:
                result = steiner_connectivity(graph, selected.groups[0])
                kind = "steiner"
            else:
                separation = min_terminal_separating_cut(graph, selected)
                result, group_split = separation, separation.group_split
                kind = "separating"
    except (ForestpackError, OSError) as e:
        console.print(format_error(str(e)), style="error")
        return ExitCode.ERROR

    payload = build_report(
        CommandType.CUT,
        graph=str(graph_path),
        kind=kind,
        value=result.value,
        cut=result.cut.to_dict(),
        group_split=[list(side) for side in group_split] if group_split else None,
    )
    if not as_json:
        console.print(
            f"[title]{kind.capitalize()} cut:[/title] value "
            f"[bullet]{result.value}[/bullet]"
        )
        console.print(f"  side A: [message]{sorted(result.cut.side_a)}[/message]")
        console.print(f"  side B: [message]{sorted(result.cut.side_b)}[/message]")
        console.print(f"  crossing: [message]{sorted(result.cut.crossing)}[/message]")
    emit_report(console, payload, output_path, as_json)
    return ExitCode.SUCCESS
