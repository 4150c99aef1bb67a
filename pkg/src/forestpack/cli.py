"""Command-line interface for forestpack."""

from pathlib import Path

import rich_click as click
from rich.console import Console
from rich.theme import Theme

from forestpack import __prog_name__, __version__
from forestpack.commands.counterexample import counterexample_command
from forestpack.commands.cut import cut_command
from forestpack.commands.kgcheck import kgcheck_command
from forestpack.commands.pack import MODES, pack_command
from forestpack.commands.split import split_command
from forestpack.commands.sweep import sweep_command
from forestpack.commands.verify import verify_command
from forestpack.models.packing_models import DEFAULT_BUDGET
from forestpack.utils.output import (
    CHALKY,
    CORAL,
    CYAN,
    IVORY,
    MALIBU,
    SAGE,
    VIOLET,
    WHISKEY,
    configure_logging,
)

# Use existing color scheme from output.py
custom_theme = Theme(
    {
        "success": f"bold {SAGE}",  # Light green from output.py
        "error": f"bold {CORAL}",  # Light red from output.py
        "warning": f"bold {WHISKEY}",  # Light orange from output.py
        "path": MALIBU,  # Light blue from output.py
        "bullet": CHALKY,  # Light yellow from output.py
        "message": IVORY,  # Light gray from output.py
        "line_number": CYAN,  # Cyan from output.py
        "title": VIOLET,  # Purple from output.py
    }
)

console = Console(theme=custom_theme)

graph_option = click.option(
    "--graph",
    "-g",
    "graph_path",
    required=True,
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Graph file to read.",
)
budget_option = click.option(
    "--budget",
    type=click.IntRange(min=1),
    default=DEFAULT_BUDGET,
    show_default=True,
    envvar="FORESTPACK_BUDGET",
    help="Node budget per exact search (env: FORESTPACK_BUDGET).",
)
out_option = click.option(
    "--out",
    "-o",
    "output_path",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Write the JSON report to this file.",
)
json_option = click.option(
    "--json",
    "as_json",
    is_flag=True,
    help="Print the JSON report instead of the summary.",
)


@click.group()
@click.version_option(
    version=__version__,
    prog_name=__prog_name__,
)
@click.option(
    "--verbose",
    "-v",
    is_flag=True,
    help="Log search and recursion progress to stderr.",
)
@click.pass_context
def cli(ctx: click.Context, verbose: bool) -> None:
    """forestpack - Steiner forest packing toolkit.

    Connectivity oracles, exact desk-scale packing, the recursive
    decompose-and-pack driver and machine checks for the counterexample
    to the extension theorem.

    Exit codes: 0 success or FEASIBLE, 1 error, 2 INFEASIBLE, 3 TIMEOUT.
    """
    configure_logging(verbose)
    # Initialize shared console
    ctx.ensure_object(dict)
    ctx.obj["console"] = console


@cli.command()
@graph_option
@click.option(
    "--groups",
    help="Comma-separated group indices; all groups when omitted.",
)
@click.option(
    "--constrain",
    metavar="A:B",
    help="Constrained cut keeping vertex lists A and B apart, e.g. 0,1:5.",
)
@out_option
@json_option
@click.pass_context
def cut(
    ctx: click.Context,
    graph_path: Path,
    groups: str,
    constrain: str,
    output_path: Path,
    as_json: bool,
) -> None:
    """Report a minimum cut.

    - One group: its Steiner cut.
    - Several groups: the minimum cut separating them, each group kept whole.
    - --constrain: the minimum cut with A and B on opposite sides.
    """
    exit_code = cut_command(
        graph_path=graph_path,
        groups=groups,
        constrain=constrain,
        output_path=output_path,
        as_json=as_json,
        console=ctx.obj["console"],
    )
    ctx.exit(exit_code)


@cli.command()
@graph_option
@click.option("--k", "-k", "k", type=int, required=True, help="Number of forests.")
@click.option(
    "--mode",
    type=click.Choice(MODES, case_sensitive=False),
    default="exact",
    show_default=True,
    help="Solver: exhaustive search, spanning trees, or the recursive driver.",
)
@click.option(
    "--extend",
    metavar="V:E=L,...",
    help="Labels at vertex V the packing must extend; unlisted edges get 0.",
)
@click.option(
    "--balance",
    help="Comma-separated vertices to balance; the file's reserve set by default.",
)
@click.option("--forbid-fake", is_flag=True, help="Never use edges flagged fake.")
@click.option(
    "--q",
    "q",
    type=click.IntRange(min=1),
    default=36,
    show_default=True,
    help="Degree multiplier Q for --mode decompose (9 for three groups or fewer).",
)
@budget_option
@out_option
@json_option
@click.pass_context
def pack(
    ctx: click.Context,
    graph_path: Path,
    k: int,
    mode: str,
    extend: str,
    balance: str,
    forbid_fake: bool,
    q: int,
    budget: int,
    output_path: Path,
    as_json: bool,
) -> None:
    """Pack k edge-disjoint Steiner forests.

    The report lists each class as edge ids, the verifier's per-check
    verdicts and, for --mode decompose, the recursion trace.
    """
    exit_code = pack_command(
        graph_path=graph_path,
        k=k,
        mode=mode.lower(),
        extend=extend,
        balance=balance,
        forbid_fake=forbid_fake,
        q=q,
        budget=budget,
        output_path=output_path,
        as_json=as_json,
        console=ctx.obj["console"],
    )
    ctx.exit(exit_code)


@cli.command()
@graph_option
@click.option("--vertex", "-x", type=int, required=True, help="Vertex to split at.")
@click.option(
    "--save",
    "save_path",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Write the split graph to this file.",
)
@out_option
@json_option
@click.pass_context
def split(
    ctx: click.Context,
    graph_path: Path,
    vertex: int,
    save_path: Path,
    output_path: Path,
    as_json: bool,
) -> None:
    """Split off two edges at a vertex, preserving local connectivity."""
    exit_code = split_command(
        graph_path=graph_path,
        vertex=vertex,
        save_path=save_path,
        output_path=output_path,
        as_json=as_json,
        console=ctx.obj["console"],
    )
    ctx.exit(exit_code)


@cli.command()
@graph_option
@click.option("--k", "-k", "k", type=int, required=True, help="Family size.")
@click.option("--deleted", help="Comma-separated edge ids deleted before the audit.")
@out_option
@json_option
@click.pass_context
def kgcheck(
    ctx: click.Context,
    graph_path: Path,
    k: int,
    deleted: str,
    output_path: Path,
    as_json: bool,
) -> None:
    """Minimize the (k,g)-family functional over all admissible partitions.

    S is the union of the file's terminal groups. Graphs are limited to
    12 vertices.
    """
    exit_code = kgcheck_command(
        graph_path=graph_path,
        k=k,
        deleted=deleted,
        output_path=output_path,
        as_json=as_json,
        console=ctx.obj["console"],
    )
    ctx.exit(exit_code)


@cli.command()
@click.option("--Q", "q", type=int, default=30, show_default=True, help="Multiplier Q.")
@click.option("--k", "-k", "k", type=int, default=3, show_default=True, help="k.")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed.")
@click.option(
    "--refute",
    is_flag=True,
    help="Search exhaustively for an extension (honored only when Q*k <= 12).",
)
@click.option(
    "--control",
    is_flag=True,
    help="Build the control instance with k-1 direct A-B edges.",
)
@click.option(
    "--graph-out",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Write the instance as a graph file.",
)
@budget_option
@out_option
@json_option
@click.pass_context
def counterexample(
    ctx: click.Context,
    q: int,
    k: int,
    seed: int,
    refute: bool,
    control: bool,
    graph_out: Path,
    budget: int,
    output_path: Path,
    as_json: bool,
) -> None:
    """Build and check the counterexample to the extension theorem."""
    exit_code = counterexample_command(
        q=q,
        k=k,
        seed=seed,
        refute=refute,
        control=control,
        budget=budget,
        graph_out=graph_out,
        output_path=output_path,
        as_json=as_json,
        console=ctx.obj["console"],
    )
    ctx.exit(exit_code)


@cli.command()
@click.option("--count", type=int, default=20, show_default=True, help="Instances.")
@click.option(
    "--n",
    "n_range",
    type=(int, int),
    default=(4, 7),
    show_default=True,
    help="Smallest and largest vertex count.",
)
@click.option(
    "--density",
    type=float,
    default=1.0,
    show_default=True,
    help="Expected edge multiplicity per vertex pair.",
)
@click.option("--t", "t", type=int, default=1, show_default=True, help="Groups.")
@click.option(
    "--k",
    "k_range",
    type=(int, int),
    default=(1, 2),
    show_default=True,
    help="Smallest and largest k.",
)
@click.option(
    "--connectivity",
    type=int,
    default=0,
    show_default=True,
    help="Per-group Steiner connectivity the generator retries for.",
)
@click.option(
    "--q",
    "q",
    type=click.IntRange(min=1),
    default=36,
    show_default=True,
    help="Degree multiplier Q for the recursive driver.",
)
@click.option("--seed", type=int, default=0, show_default=True, help="Sweep seed.")
@click.option(
    "--jobs", "-j", type=click.IntRange(min=1), default=1, help="Worker processes."
)
@click.option(
    "--timing",
    is_flag=True,
    help="Add an elapsed column (output is then not byte-reproducible).",
)
@budget_option
@click.option(
    "--out",
    "-o",
    "output_path",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Write the CSV to this file instead of stdout.",
)
@click.pass_context
def sweep(
    ctx: click.Context,
    count: int,
    n_range: tuple[int, int],
    density: float,
    t: int,
    k_range: tuple[int, int],
    connectivity: int,
    q: int,
    seed: int,
    jobs: int,
    timing: bool,
    budget: int,
    output_path: Path,
) -> None:
    """Run seeded random instances through both packers and emit CSV."""
    exit_code = sweep_command(
        count=count,
        n_range=n_range,
        density=density,
        t=t,
        k_range=k_range,
        connectivity=connectivity,
        q=q,
        seed=seed,
        budget=budget,
        jobs=jobs,
        timing=timing,
        output_path=output_path,
        console=ctx.obj["console"],
    )
    ctx.exit(exit_code)


@cli.command()
@click.argument(
    "report_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
)
@click.option(
    "--graph",
    "-g",
    "graph_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="Graph file to check against; the report's graph by default.",
)
@out_option
@json_option
@click.pass_context
def verify(
    ctx: click.Context,
    report_path: Path,
    graph_path: Path,
    output_path: Path,
    as_json: bool,
) -> None:
    """Re-run the packing verifier on a pack report.

    Arguments:
    - REPORT_PATH: JSON report written by `forestpack pack --out`
    """
    exit_code = verify_command(
        report_path=report_path,
        graph_path=graph_path,
        output_path=output_path,
        as_json=as_json,
        console=ctx.obj["console"],
    )
    ctx.exit(exit_code)


if __name__ == "__main__":  # pragma: no cover
    cli()
