from rich.console import Console
from rich.table import Table
from rich.text import Text

from .artifacts import Artifact

MAX_ROWS = 12
MAX_COLUMNS = 8


def _cell(value) -> Text | str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return Text("yes", style="bold green") if value else "no"
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def summarize(artifact: Artifact, path: str, console: Console | None = None):
    """
    Print the head of an artifact as a table. Goes to stderr so that
    `--output -` keeps stdout clean.
    """
    console = console or Console(stderr=True)
    columns = artifact.columns[:MAX_COLUMNS]
    table = Table(title=f"{artifact.command} -> {path}", title_justify="left")
    for name in columns:
        table.add_column(name, justify="right", no_wrap=True)
    for row in artifact.rows[:MAX_ROWS]:
        table.add_row(*(_cell(v) for v in row[: len(columns)]))
    console.print(table)

    hidden_rows = len(artifact.rows) - MAX_ROWS
    hidden_columns = len(artifact.columns) - MAX_COLUMNS
    if hidden_rows > 0 or hidden_columns > 0:
        console.print(
            f"[dim]{max(hidden_rows, 0)} more rows, {max(hidden_columns, 0)} more columns in {path}[/dim]"
        )
    for key in ("minima", "double_well"):
        if key in artifact.extras:
            console.print(f"{key}: {artifact.extras[key]}")
    fits = artifact.extras.get("fits", {})
    for name, described in fits.items():
        if "selected" in described:
            console.print(f"selected family ({name}): [bold]{described['selected']}[/bold]")
