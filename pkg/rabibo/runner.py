"""
Executes a validated RunConfig: builds the command's artifact, writes it
atomically and prints a summary.
"""

import logging
from typing import Callable

from rich.console import Console
from rich.progress import Progress, SpinnerColumn, TimeElapsedColumn

from .artifacts import Artifact, versions, write_artifact
from .config import Command, RunConfig
from .constants import app_configuration
from .exceptions import ExceptionContext
from .subcommands.compare_cmd import compare_command
from .subcommands.convergence_cmd import convergence_command
from .subcommands.fit_cmd import fit_command
from .subcommands.population_cmd import population_command
from .subcommands.potential_cmd import potential_command
from .subcommands.spectrum_cmd import spectrum_command
from .subcommands.sweep_cmd import sweep_command
from .subcommands.wavefunction_cmd import wavefunction_command
from .summarize import summarize

logger = logging.getLogger(__name__)

COMMANDS: dict[Command, Callable[[RunConfig, Callable | None], Artifact]] = {
    Command.SPECTRUM: spectrum_command,
    Command.SWEEP: sweep_command,
    Command.POTENTIAL: potential_command,
    Command.WAVEFUNCTION: wavefunction_command,
    Command.POPULATION: population_command,
    Command.FIT: fit_command,
    Command.CONVERGENCE: convergence_command,
    Command.COMPARE: compare_command,
}


def work_items(config: RunConfig) -> int:
    """Number of independent points a command solves."""
    if config.command is Command.SWEEP:
        return len(config.couplings())
    if config.command is Command.COMPARE:
        return len(config.delta) * len(config.g_over_gc)
    return 1


def build_artifact(config: RunConfig, completed: Callable | None = None) -> Artifact:
    with ExceptionContext(f"{config.command.value}"):
        artifact = COMMANDS[config.command](config, completed)
    return artifact


def run_with_progress_bar(config: RunConfig) -> Artifact:
    with Progress(
        SpinnerColumn(),
        *Progress.get_default_columns(),
        TimeElapsedColumn(),
        console=Console(stderr=True),
        transient=True,
    ) as progress:
        task = progress.add_task(f"[red]{config.command.value}...", total=work_items(config))

        def completed():
            progress.update(task, advance=1)

        artifact = build_artifact(config, completed)
        progress.update(task, visible=False)
        return artifact


def metadata(config: RunConfig) -> dict:
    return {
        "program": app_configuration["program_name"],
        "command": config.command.value,
        "config": config.model_dump(mode="json"),
        "versions": versions(),
    }


def run(config: RunConfig, quiet: bool = False) -> int:
    """Build, write and summarize one artifact. Returns the exit status."""
    if work_items(config) > 1 and not quiet:
        artifact = run_with_progress_bar(config)
    else:
        artifact = build_artifact(config)

    path = config.output_path
    write_artifact(artifact, path, config.resolved_format.value, metadata(config))
    logger.info("wrote %s (%d rows)", path, len(artifact.rows))
    if not quiet:
        summarize(artifact, path)
    return 0
