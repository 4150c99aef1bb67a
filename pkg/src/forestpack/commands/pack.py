"""Pack command implementation for the forestpack CLI.

This module provides the 'pack' command, which packs k edge-disjoint Steiner
forests in a graph file with one of three solvers and reports the classes, the
verifier's per-check verdicts and, for the recursive driver, its trace.
"""

from pathlib import Path
from typing import Optional

from rich.console import Console

from forestpack.models.errors import ForestpackError, PreconditionError
from forestpack.models.packing_models import (
    DEFAULT_BUDGET,
    DecomposeConfig,
    SearchVerdict,
)
from forestpack.models.run_models import CommandType, ExitCode, RunConfig
from forestpack.utils.decompose import decompose_and_pack
from forestpack.utils.output import (
    class_table,
    format_error,
    print_check_result,
    print_verdict,
)
from forestpack.utils.packing import verify_packing
from forestpack.utils.parser import load_graph, parse_extend, parse_id_list
from forestpack.utils.reports import emit_report, pack_report
from forestpack.utils.search import exact_pack
from forestpack.utils.spanning import pack_spanning_trees

MODES = ("exact", "spanning", "decompose")


def pack_command(
    graph_path: Path,
    k: int,
    mode: str = "exact",
    extend: Optional[str] = None,
    balance: Optional[str] = None,
    forbid_fake: bool = False,
    q: int = 36,
    budget: int = DEFAULT_BUDGET,
    output_path: Optional[Path] = None,
    as_json: bool = False,
    console: Optional[Console] = None,
) -> int:
    """Pack k Steiner forests in a graph file.

    Args:
        graph_path: Graph file to read
        k: Number of forests
        mode: exact, spanning or decompose
        extend: `v:edge=label,...` subpartition the packing must extend
        balance: Vertices to balance; the file's reserve set when omitted
        forbid_fake: Never use edges flagged as fake
        q: Degree multiplier for the decompose driver
        budget: Node budget per exact search
        output_path: Where to write the JSON report
        as_json: Print the JSON report instead of the summary
        console: Console for output

    Returns:
        int: 0 when FEASIBLE, 2 when INFEASIBLE or the driver fails, 3 on
        TIMEOUT, 1 for errors
    """
    if console is None:
        console = Console()

    trace, nodes, error, sp = [], None, None, None
    try:
        cfg = RunConfig(CommandType.PACK, graph_path, budget=budget)
        if k < 1:
            raise PreconditionError("k must be at least 1")
        if mode not in MODES:
            raise PreconditionError(f"Unknown mode '{mode}'")
        graph, terminals = load_graph(cfg.graph_path)
        sp = parse_extend(extend, graph, k) if extend else None
        balanced = (
            parse_id_list(balance) if balance is not None else terminals.reserve
        )

        if mode == "exact":
            result = exact_pack(
                graph,
                terminals,
                k,
                extend=sp,
                balance=balanced,
                forbid_fake=forbid_fake,
                budget=cfg.budget,
            )
            verdict, packing, nodes = result.verdict.value, result.packing, result.nodes
            exit_code = ExitCode.for_verdict(result.verdict)
        elif mode == "spanning":
            if sp is not None or balance:
                raise PreconditionError(
                    "Spanning mode does not take --extend or --balance"
                )
            result = pack_spanning_trees(graph, k)
            verdict, packing = result.verdict.value, result.packing
            exit_code = ExitCode.for_verdict(result.verdict)
            if not result.feasible:
                error = (
                    f"partition into {len(result.witness)} parts has only "
                    f"{result.crossing} crossing edges"
                )
        else:
            if sp is not None:
                raise PreconditionError("Decompose mode does not take --extend")
            result = decompose_and_pack(
                graph,
                terminals,
                k,
                DecomposeConfig(
                    q=q, budget=cfg.budget, reserve_degree_factor=max(1, q - 2)
                ),
            )
            trace = [step.to_dict() for step in result.trace]
            packing, error = result.packing, result.error
            if result.success:
                verdict, exit_code = "FEASIBLE", ExitCode.SUCCESS
            elif result.verdict is SearchVerdict.TIMEOUT:
                verdict, exit_code = "TIMEOUT", ExitCode.TIMEOUT
            else:
                verdict, exit_code = "FAIL", ExitCode.INFEASIBLE

        verification = None
        if packing is not None:
            verification = verify_packing(
                graph,
                terminals,
                packing,
                extend=sp,
                balance=balanced if mode != "spanning" else (),
                forbid_fake=forbid_fake,
            )
    except (ForestpackError, OSError) as e:
        console.print(format_error(str(e)), style="error")
        return ExitCode.ERROR

    payload = pack_report(
        graph_path,
        terminals,
        k,
        mode,
        verdict,
        packing=packing,
        verification=verification,
        extend=sp,
        balance=balanced if mode != "spanning" else (),
        trace=trace,
        nodes=nodes,
        error=error,
    )
    if not as_json:
        detail = f"after {nodes} nodes" if nodes is not None else (error or "")
        print_verdict(console, verdict, detail)
        if packing is not None:
            console.print(class_table([sorted(c) for c in packing.classes]))
            for check, passed in verification.checks.items():
                print_check_result(console, check.value, passed)
    emit_report(console, payload, output_path, as_json)
    return exit_code
