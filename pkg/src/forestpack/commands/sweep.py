"""Sweep command implementation for the forestpack CLI.

This module provides the 'sweep' command, which runs seeded random instances
through both packers and emits one CSV row per instance followed by summary rows
against the 2k, 9k and 36k connectivity lines.
"""

from pathlib import Path
from typing import Optional

from rich.console import Console

from forestpack.models.errors import ForestpackError
from forestpack.models.packing_models import DEFAULT_BUDGET
from forestpack.models.run_models import CommandType, ExitCode, RunConfig, SweepParams
from forestpack.utils.output import format_error, format_success
from forestpack.utils.reports import sweep_csv, write_sweep_csv
from forestpack.utils.sweep import run_sweep


def sweep_command(
    count: int = 20,
    n_range: tuple[int, int] = (4, 7),
    density: float = 1.0,
    t: int = 1,
    k_range: tuple[int, int] = (1, 2),
    connectivity: int = 0,
    q: int = 36,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
    timing: bool = False,
    output_path: Optional[Path] = None,
    console: Optional[Console] = None,
) -> int:
    """Run a connectivity-threshold sweep.

    Args:
        count: Number of instances
        n_range: Smallest and largest vertex count
        density: Expected edge multiplicity per vertex pair
        t: Number of terminal groups
        k_range: Smallest and largest k
        connectivity: Per-group Steiner connectivity the generator aims for
        q: Degree multiplier for the decompose driver
        seed: Seed for the whole sweep
        budget: Node budget per exact search
        jobs: Worker processes
        timing: Add the elapsed column
        output_path: CSV file to write; the CSV is printed when omitted
        console: Console for output

    Returns:
        int: Exit code (0 for success, 1 for errors)
    """
    if console is None:
        console = Console()

    try:
        params = SweepParams(
            count=count,
            n_min=n_range[0],
            n_max=n_range[1],
            density=density,
            t=t,
            k_min=k_range[0],
            k_max=k_range[1],
            connectivity=connectivity,
            q=q,
        )
        cfg = RunConfig(
            CommandType.SWEEP, seed=seed, budget=budget, output_path=output_path
        )
        records, summaries = run_sweep(cfg, params, jobs=max(1, jobs))
        if cfg.output_path is not None:
            write_sweep_csv(cfg.output_path, records, summaries, timing)
    except (ForestpackError, OSError) as e:
        console.print(format_error(str(e)), style="error")
        return ExitCode.ERROR

    if output_path is None:
        console.out(sweep_csv(records, summaries, timing), highlight=False, end="")
    else:
        console.print(
            format_success(f"{len(records)} instances written to {output_path}")
        )
    return ExitCode.SUCCESS
