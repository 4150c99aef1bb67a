"""Terminal output formatting and logging setup."""

import logging

import rich_click as click
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

# One Dark theme colors
CHALKY = "#E5C07B"  # Light yellow
CORAL = "#E06C75"  # Light red
CYAN = "#56B6C2"  # Cyan
MALIBU = "#61AFEF"  # Light blue
SAGE = "#98C379"  # Light green
VIOLET = "#C678DD"  # Purple
STONE = "#5C6370"  # Gray
IVORY = "#ABB2BF"  # Light gray
WHISKEY = "#D19A66"  # Light orange for warnings

# Symbols for check results
SUCCESS_SYMBOL = "✓"
ERROR_SYMBOL = "✗"
WARNING_SYMBOL = "⚠"

# Configure rich-click styling using One Dark colors
click.rich_click.USE_RICH_MARKUP = True
click.rich_click.USE_MARKDOWN = True

# Command and options styling
click.rich_click.STYLE_COMMAND = f"bold {MALIBU}"
click.rich_click.STYLE_OPTION = f"bold {CYAN}"
click.rich_click.STYLE_SWITCH = f"bold {SAGE}"
click.rich_click.STYLE_METAVAR = CHALKY
click.rich_click.STYLE_METAVAR_SEPARATOR = STONE

# Help text styling
click.rich_click.STYLE_HELPTEXT = IVORY
click.rich_click.STYLE_HEADER_TEXT = f"bold {IVORY}"

# Error styling
click.rich_click.STYLE_ERRORS_MESSAGE = f"bold {CORAL}"
click.rich_click.STYLE_ERRORS_SUGGESTION = STONE
click.rich_click.STYLE_ERRORS_CMD = MALIBU

# Verdict styles used by the commands
VERDICT_STYLES = {
    "FEASIBLE": "success",
    "INFEASIBLE": "error",
    "TIMEOUT": "warning",
    "IMPOSSIBLE": "success",
    "INCONCLUSIVE": "warning",
    "FAIL": "error",
}


def configure_logging(verbose: bool = False) -> None:
    """Route library logging to stderr through rich.

    Args:
        verbose: DEBUG level when set, WARNING otherwise
    """
    handler = RichHandler(
        console=Console(stderr=True),
        show_path=False,
        rich_tracebacks=True,
    )
    root = logging.getLogger("forestpack")
    root.handlers = [handler]
    root.setLevel(logging.DEBUG if verbose else logging.WARNING)
    root.propagate = False


def print_step_result(console: Console, result: bool | str) -> None:
    """Print a step result with appropriate formatting.

    Args:
        console: Rich Console instance for output
        result: True for success, False for error, "warning" for warning
    """
    if result is True:
        console.print(f"[success]{SUCCESS_SYMBOL}[/success]")
    elif result is False:
        console.print(f"[error]{ERROR_SYMBOL}[/error]")
    elif result == "warning":
        console.print(f"[warning]{WARNING_SYMBOL}[/warning]")


def print_check_result(
    console: Console, name: str, passed: bool, detail: str = "", indent: int = 2
) -> None:
    """Print one named check with its symbol.

    Args:
        console: Rich console instance for output
        name: Check name
        passed: Whether the check passed
        detail: Extra text printed after the name
        indent: Number of spaces to indent (default: 2)
    """
    symbol = (
        f"[success]{SUCCESS_SYMBOL}[/success]"
        if passed
        else f"[error]{ERROR_SYMBOL}[/error]"
    )
    suffix = f" [message]{detail}[/message]" if detail else ""
    console.print(" " * indent + f"{symbol} [bullet]{name}[/bullet]{suffix}")


def print_verdict(console: Console, verdict: str, detail: str = "") -> None:
    """Print a search or certificate verdict."""
    style = VERDICT_STYLES.get(verdict, "message")
    suffix = f" [message]{detail}[/message]" if detail else ""
    console.print(f"[title]Verdict:[/title] [{style}]{verdict}[/{style}]{suffix}")


def class_table(classes: list[list[int]], title: str = "Classes") -> Table:
    """Table listing the edge ids of each packing class."""
    table = Table(title=title, title_style="title", header_style="bullet")
    table.add_column("class", justify="right", style="line_number")
    table.add_column("size", justify="right")
    table.add_column("edges", style="message")
    for index, edges in enumerate(classes):
        table.add_row(str(index), str(len(edges)), " ".join(map(str, edges)))
    return table


def format_error(message: str, context: str | None = None) -> str:
    """Format an error message with optional context.

    Args:
        message: The main error message
        context: Optional context information

    Returns:
        str: Formatted error message
    """
    if context:
        return f"Error: {message}\n  {context}"
    return f"Error: {message}"


def format_success(message: str) -> str:
    """Format a success message."""
    return f"Success: {message}"


def format_warning(message: str) -> str:
    """Format a warning message."""
    return f"Warning: {message}"
