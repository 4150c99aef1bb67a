"""Structured JSON reports and sweep CSV output.

Every command writes one JSON document per run. Documents carry a schema version
and the parameters needed to re-check them, so `forestpack verify` can reload a
pack report and validate its packing against the original graph file.
"""

import csv
import io
import json
from pathlib import Path
from typing import Iterable, Optional

from rich.console import Console

from forestpack.models.graph import TerminalSystem
from forestpack.models.packing_models import EdgeSubpartition, Packing
from forestpack.models.packing_report import PackingReport
from forestpack.models.run_models import (
    REPORT_SCHEMA_VERSION,
    CommandType,
    SweepRecord,
    SweepSummary,
)

SWEEP_COLUMNS = [
    "kind",
    "id",
    "seed",
    "n",
    "m",
    "k",
    "t",
    "connectivities",
    "verdict",
    "decompose",
    "nodes",
]


def terminals_to_dict(terminals: TerminalSystem) -> dict:
    """Plain representation of a terminal system."""
    return {
        "groups": [sorted(group) for group in terminals.groups],
        "reserve": sorted(terminals.reserve),
    }


def build_report(command: CommandType, **sections) -> dict:
    """Wrap report sections with the schema header."""
    return {"schema": REPORT_SCHEMA_VERSION, "command": command.value, **sections}


def pack_report(
    graph_path: Optional[Path],
    terminals: TerminalSystem,
    k: int,
    mode: str,
    verdict: str,
    packing: Optional[Packing] = None,
    verification: Optional[PackingReport] = None,
    extend: Optional[EdgeSubpartition] = None,
    balance: Iterable[int] = (),
    trace: Optional[list] = None,
    nodes: Optional[int] = None,
    error: Optional[str] = None,
) -> dict:
    """JSON document for one pack run.

    Args:
        graph_path: Graph file the run read
        terminals: Groups and reserve used
        k: Number of classes requested
        mode: Solver used
        verdict: FEASIBLE, INFEASIBLE, TIMEOUT or FAIL
        packing: Classes found, if any
        verification: verify_packing report for the classes
        extend: Subpartition the classes had to extend
        balance: Vertices that had to be balanced
        trace: decompose_and_pack steps as dicts
        nodes: Search nodes used
        error: Failure reason
    """
    return build_report(
        CommandType.PACK,
        graph=str(graph_path) if graph_path else None,
        terminals=terminals_to_dict(terminals),
        k=k,
        mode=mode,
        verdict=verdict,
        packing=packing.to_dict() if packing else None,
        checks=verification.to_dict() if verification else None,
        extend=extend.to_dict() if extend else None,
        balance=sorted(balance),
        trace=trace or [],
        nodes=nodes,
        error=error,
    )


def write_json(path: Path, payload: dict) -> None:
    """Write a report with stable key order."""
    with open(path, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=2, sort_keys=True)
        f.write("\n")


def read_json(path: Path) -> dict:
    """Read a report written by write_json."""
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def dumps(payload: dict) -> str:
    """Serialize a report for the terminal."""
    return json.dumps(payload, indent=2, sort_keys=True)


def sweep_csv(
    records: list[SweepRecord], summaries: list[SweepSummary], timing: bool = False
) -> str:
    """CSV text with instance rows sorted by id, then the summary rows."""
    columns = SWEEP_COLUMNS + (["elapsed"] if timing else [])
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    for record in sorted(records, key=lambda r: r.instance_id):
        writer.writerow(record.row(timing))
    for summary in summaries:
        writer.writerow(summary.row(timing))
    return buffer.getvalue()


def write_sweep_csv(
    path: Path,
    records: list[SweepRecord],
    summaries: list[SweepSummary],
    timing: bool = False,
) -> None:
    """Write the sweep CSV to `path`."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(sweep_csv(records, summaries, timing))


def emit_report(
    console: Console,
    payload: dict,
    output_path: Optional[Path] = None,
    as_json: bool = False,
) -> None:
    """Write a report to `output_path` and/or print it as JSON."""
    if output_path is not None:
        write_json(output_path, payload)
        if not as_json:
            console.print(f"Report written to [path]{output_path}[/path]")
    if as_json:
        console.out(dumps(payload), highlight=False)
