"""Counterexample command implementation for the forestpack CLI.

This module provides the 'counterexample' command, which builds the two-clique
instance for parameters (Q, k), runs every machine check on it and optionally
searches exhaustively for an extension of the labels at v. The graph is written
as a graph file whose single terminal group is S and whose reserve set is R.
"""

from pathlib import Path
from typing import Optional

from rich.console import Console

from forestpack.models.counterexample_models import REFUTE_MAX_QK
from forestpack.models.errors import ForestpackError
from forestpack.models.packing_models import DEFAULT_BUDGET, SearchVerdict
from forestpack.models.run_models import CommandType, ExitCode, RunConfig
from forestpack.utils.counterexample import (
    audit_instance,
    build_control_instance,
    build_lau_counterexample,
)
from forestpack.utils.output import (
    format_error,
    format_warning,
    print_check_result,
    print_verdict,
)
from forestpack.utils.reports import build_report, emit_report
from forestpack.utils.writer import save_graph


def counterexample_command(
    q: int,
    k: int,
    seed: int = 0,
    refute: bool = False,
    control: bool = False,
    budget: int = DEFAULT_BUDGET,
    graph_out: Optional[Path] = None,
    output_path: Optional[Path] = None,
    as_json: bool = False,
    console: Optional[Console] = None,
) -> int:
    """Build and audit a counterexample instance.

    Args:
        q: Degree multiplier Q
        k: Number of S-subgraphs
        seed: Seed for every arbitrary choice in the construction
        refute: Run the exhaustive extension search (only when Q*k is small)
        control: Build the control instance with k-1 direct A-B edges
        budget: Node budget for the exhaustive search
        graph_out: Where to write the graph file
        output_path: Where to write the JSON report
        as_json: Print the JSON report instead of the summary
        console: Console for output

    Returns:
        int: 0 when the checks hold (or for a control instance), 2 when a check
        fails, 3 when the exhaustive search times out, 1 for errors
    """
    if console is None:
        console = Console()

    try:
        cfg = RunConfig(
            CommandType.COUNTEREXAMPLE,
            seed=seed,
            budget=budget,
            output_path=output_path,
        )
        build = build_control_instance if control else build_lau_counterexample
        inst = build(q, k, cfg.seed)
        skipped = refute and inst.params.qk > REFUTE_MAX_QK
        if skipped and not as_json:
            console.print(
                format_warning(
                    f"--refute ignored: Q*k = {inst.params.qk} exceeds {REFUTE_MAX_QK}"
                ),
                style="warning",
            )
        audit = audit_instance(inst, refute=refute and not skipped, budget=cfg.budget)
        if graph_out is not None:
            save_graph(
                graph_out,
                inst.graph,
                inst.terminal_system,
                comment=(
                    f"counterexample Q={q} k={k} seed={seed}"
                    f"{' control' if control else ''}; v={inst.v}"
                ),
            )
    except (ForestpackError, OSError) as e:
        console.print(format_error(str(e)), style="error")
        return ExitCode.ERROR

    labels = inst.subpartition.labels
    extend_option = f"{inst.v}:" + ",".join(
        f"{e}={label}" for e, label in sorted(labels.items())
    )
    payload = build_report(
        CommandType.COUNTEREXAMPLE,
        instance=inst.summary(),
        v=inst.v,
        subpartition=inst.subpartition.to_dict(),
        extend_option=extend_option,
        graph_file=str(graph_out) if graph_out else None,
        refute_skipped=skipped,
        audit=audit.to_dict(),
    )

    if audit.refutation is not None and (
        audit.refutation.verdict is SearchVerdict.TIMEOUT
    ):
        exit_code = ExitCode.TIMEOUT
    elif control or audit.confirms:
        exit_code = ExitCode.SUCCESS
    else:
        exit_code = ExitCode.INFEASIBLE

    if not as_json:
        summary = inst.summary()
        console.print(
            f"[title]Instance:[/title] {summary['vertices']} vertices, "
            f"{summary['edges']} edges, degree(v) = {summary['degree_v']}, "
            f"|X| = {summary['x_count']}, |Y| = {summary['y_count']}"
        )
        print_check_result(
            console, "structure", not audit.violations, ", ".join(audit.violations)
        )
        print_check_result(console, "neighborhood", audit.neighborhood)
        print_check_result(
            console,
            "constrained cuts",
            audit.condition2,
            f"min {min(audit.cut_values.values(), default=None)}",
        )
        print_check_result(
            console,
            "Steiner connectivity",
            audit.bottleneck.connectivity_ok,
            str(audit.bottleneck.steiner_connectivity),
        )
        print_verdict(
            console,
            audit.bottleneck.verdict.value,
            f"{audit.bottleneck.available} direct edges for "
            f"{audit.bottleneck.required} classes",
        )
        if audit.refutation is not None:
            print_verdict(
                console,
                audit.refutation.verdict.value,
                f"exhaustive search, {audit.refutation.nodes} nodes",
            )
    emit_report(console, payload, output_path, as_json)
    return exit_code
