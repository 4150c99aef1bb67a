"""Kgcheck command implementation for the forestpack CLI.

This module provides the 'kgcheck' command: it deletes the listed edges, builds
the parity function on the remaining graph and minimizes the (k,g)-family
feasibility functional over every admissible partition. The terminal set S is
the union of the file's terminal groups.
"""

from pathlib import Path
from typing import Optional

from rich.console import Console

from forestpack.models.errors import ForestpackError
from forestpack.models.run_models import CommandType, ExitCode
from forestpack.utils.kg_family import (
    audit_kg,
    check_treepacking_hypotheses,
    make_parity_g,
    without_edges,
)
from forestpack.utils.output import format_error, print_check_result, print_verdict
from forestpack.utils.parser import load_graph, parse_id_list
from forestpack.utils.reports import build_report, emit_report


def kgcheck_command(
    graph_path: Path,
    k: int,
    deleted: Optional[str] = None,
    output_path: Optional[Path] = None,
    as_json: bool = False,
    console: Optional[Console] = None,
) -> int:
    """Audit the (k,g)-family functional on a graph file.

    Args:
        graph_path: Graph file to read
        k: Family size
        deleted: Comma-separated edge ids forming the deleted set T
        output_path: Where to write the JSON report
        as_json: Print the JSON report instead of the summary
        console: Console for output

    Returns:
        int: 0 when the minimum is nonnegative, 2 when it is negative, 1 for
        errors
    """
    if console is None:
        console = Console()

    try:
        graph, terminals = load_graph(graph_path)
        s = terminals.terminals
        removed = parse_id_list(deleted)
        hypotheses = check_treepacking_hypotheses(graph, s, removed, k)
        remaining = without_edges(graph, removed)
        pf = make_parity_g(remaining, s)
        audit = audit_kg(remaining, s, pf, k)
    except (ForestpackError, OSError) as e:
        console.print(format_error(str(e)), style="error")
        return ExitCode.ERROR

    if not as_json:
        print_verdict(
            console,
            "FEASIBLE" if audit.nonnegative else "INFEASIBLE",
            f"min f_g = {audit.min_value} over {audit.examined} partitions",
        )
        if audit.argmin is not None:
            blocks = [sorted(block) for block in audit.argmin.blocks]
            console.print(f"  argmin blocks: [message]{blocks}[/message]")
            console.print(
                f"  argmin outside: [message]{sorted(audit.argmin.outside)}[/message]"
            )
        for name, passed in hypotheses.to_dict().items():
            if isinstance(passed, bool) and name != "holds":
                print_check_result(console, name, passed)
    payload = build_report(
        CommandType.KGCHECK,
        graph=str(graph_path),
        k=k,
        deleted=sorted(removed),
        g={str(v): value for v, value in sorted(pf.values.items())},
        audit=audit.to_dict(),
        hypotheses=hypotheses.to_dict(),
    )
    emit_report(console, payload, output_path, as_json)
    return ExitCode.SUCCESS if audit.nonnegative else ExitCode.INFEASIBLE
