"""Verify command implementation for the forestpack CLI.

This module provides the 'verify' command, which reloads a pack report and the
graph file it names and re-runs the packing verifier on the stored classes.
"""

from pathlib import Path
from typing import Optional

from rich.console import Console

from forestpack.models.errors import ForestpackError, PreconditionError
from forestpack.models.graph import TerminalSystem
from forestpack.models.packing_models import EdgeSubpartition, Packing
from forestpack.models.packing_report import CheckType
from forestpack.models.run_models import REPORT_SCHEMA_VERSION, CommandType, ExitCode
from forestpack.utils.output import (
    format_error,
    print_check_result,
    print_step_result,
)
from forestpack.utils.packing import verify_packing
from forestpack.utils.parser import load_graph
from forestpack.utils.reports import build_report, emit_report, read_json


def _terminals_from_dict(data: dict) -> TerminalSystem:
    return TerminalSystem(
        tuple(frozenset(group) for group in data["groups"]),
        frozenset(data.get("reserve", ())),
    )


def verify_command(
    report_path: Path,
    graph_path: Optional[Path] = None,
    output_path: Optional[Path] = None,
    as_json: bool = False,
    console: Optional[Console] = None,
) -> int:
    """Re-verify the packing stored in a pack report.

    Args:
        report_path: JSON report written by `forestpack pack`
        graph_path: Graph file to check against; the report's graph when omitted
        output_path: Where to write the JSON verification report
        as_json: Print the JSON report instead of the summary
        console: Console for output

    Returns:
        int: 0 when the packing verifies, 2 when it does not, 1 for errors
    """
    if console is None:
        console = Console()

    try:
        data = read_json(report_path)
        if data.get("schema") != REPORT_SCHEMA_VERSION:
            raise PreconditionError(
                f"Unsupported report schema {data.get('schema')!r}"
            )
        if data.get("command") != CommandType.PACK.value:
            raise PreconditionError("Only pack reports carry a packing to verify")
        if not data.get("packing"):
            raise PreconditionError("The report carries no packing")
        source = graph_path or data.get("graph")
        if not source:
            raise PreconditionError("The report names no graph file; pass --graph")
        graph, _ = load_graph(Path(source))
        terminals = _terminals_from_dict(data["terminals"])
        packing = Packing.from_dict(data["packing"])
        extend = EdgeSubpartition.from_dict(data["extend"]) if data["extend"] else None
        stored_checks = (data.get("checks") or {}).get("checks", {})
        report = verify_packing(
            graph,
            terminals,
            packing,
            extend=extend,
            balance=data.get("balance", ()),
            forbid_fake=CheckType.FAKE_EDGES.value in stored_checks,
        )
    except (ForestpackError, OSError, ValueError, KeyError) as e:
        console.print(format_error(f"Cannot verify {report_path}: {e}"), style="error")
        return ExitCode.ERROR

    if not as_json:
        console.print(f"[path]{report_path}[/path] ", end="")
        print_step_result(console, report.is_valid)
        for check, passed in report.checks.items():
            print_check_result(console, check.value, passed)
        for issue in report.issues:
            console.print(f"    [error]{issue.message}[/error] {issue.context}")
    payload = build_report(
        CommandType.VERIFY,
        report=str(report_path),
        graph=str(source),
        checks=report.to_dict(),
    )
    emit_report(console, payload, output_path, as_json)
    return ExitCode.SUCCESS if report.is_valid else ExitCode.INFEASIBLE
