"""
Run configuration for the command-line tool.

A run is configured in layers, later layers winning:
    RunConfig defaults -> config file -> command-line flags -> key=value patches
Every layer is a dict of dotted keys merged with `apply_patch`, and the result
is validated into a `RunConfig`.
"""

import argparse
from enum import Enum
from typing import Iterable, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .constants import app_configuration
from .exceptions import UsageError
from .fitting import Family, Subset
from .grid_syntax import parse_grid, parse_int_list
from .model import Branch, critical_coupling
from .shared import apply_patch, parse_key_value_args, read_config_file
from .sweep import Solver


class Command(str, Enum):
    SPECTRUM = "spectrum"
    SWEEP = "sweep"
    POTENTIAL = "potential"
    WAVEFUNCTION = "wavefunction"
    POPULATION = "population"
    FIT = "fit"
    CONVERGENCE = "convergence"
    COMPARE = "compare"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class FitChoice(str, Enum):
    NONE = "none"
    ALL = "all"
    POISSON = "poisson"
    GOE = "goe"
    GUE = "gue"

    def families(self) -> list[Family]:
        if self is FitChoice.NONE:
            return []
        if self is FitChoice.ALL:
            return list(Family)
        return [Family.parse(self.value)]


# Commands that take a list of deltas or of couplings.
_MULTI_DELTA = {Command.COMPARE}
_MULTI_COUPLING = {Command.SWEEP, Command.COMPARE}


class GridSpec(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    xi_min: float = Field(default_factory=lambda: app_configuration["default_grid"]["xi_min"])
    xi_max: float = Field(default_factory=lambda: app_configuration["default_grid"]["xi_max"])
    points: int = Field(
        default_factory=lambda: app_configuration["default_grid"]["points"], ge=2
    )

    @model_validator(mode="after")
    def ordered(self):
        if not self.xi_max > self.xi_min:
            raise ValueError(f"grid.xi_max ({self.xi_max}) must exceed grid.xi_min ({self.xi_min})")
        return self

    def values(self) -> np.ndarray:
        return np.linspace(self.xi_min, self.xi_max, self.points)


class RunConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    command: Command
    delta: list[float] = Field(..., description="Qubit splitting; a list only for compare")
    g: list[float] | None = Field(None, description="Absolute coupling(s)")
    g_over_gc: list[float] | None = Field(None, description="Coupling(s) in units of g_c")
    n_max: int = Field(default_factory=lambda: app_configuration["default_n_max"], ge=1)
    quad_order: int | None = Field(None, ge=1)
    n_levels: int = Field(default_factory=lambda: app_configuration["default_n_levels"], ge=1)
    grid: GridSpec = Field(default_factory=GridSpec)
    solver: Solver = Solver.BOTH
    branch: Branch = Branch.MINUS
    bo_method: Literal["blocks", "full"] = "blocks"
    ed_method: Literal["full", "parity"] = "full"
    state: int = Field(0, ge=0)
    population_mode: Literal["projected", "coefficients"] = "projected"
    fit: FitChoice = FitChoice.NONE
    subset: Subset = Subset.ALL
    pin_shift: bool = False
    sizes: list[int] = Field(default_factory=lambda: list(app_configuration["default_sizes"]))
    concurrency: int = Field(
        default_factory=lambda: app_configuration["default_concurrency"], ge=1
    )
    output: str | None = None
    format: OutputFormat | None = None

    @field_validator("delta", "g", "g_over_gc", mode="before")
    @classmethod
    def parse_values(cls, value):
        return None if value is None else parse_grid(value)

    @field_validator("sizes", mode="before")
    @classmethod
    def parse_sizes(cls, value):
        return parse_int_list(value)

    @field_validator("solver", "branch", "fit", "subset", "format", mode="before")
    @classmethod
    def lower_case(cls, value):
        return value.strip().lower() if isinstance(value, str) else value

    @model_validator(mode="after")
    def consistent(self):
        if (self.g is None) == (self.g_over_gc is None):
            raise ValueError("exactly one of g and g_over_gc must be given")
        couplings = self.g if self.g is not None else self.g_over_gc
        if any(v < 0 for v in self.delta + couplings):
            raise ValueError("delta and couplings must be non-negative")
        if not self.delta or not couplings:
            raise ValueError("delta and coupling need at least one value")
        if self.command not in _MULTI_DELTA and len(self.delta) > 1:
            raise ValueError(f"{self.command.value} takes a single delta")
        if self.command not in _MULTI_COUPLING and len(couplings) > 1:
            raise ValueError(f"{self.command.value} takes a single coupling")
        if self.command is Command.SWEEP and any(b < a for a, b in zip(couplings, couplings[1:])):
            raise ValueError("sweep couplings must be ascending")
        if self.command is Command.COMPARE and self.g_over_gc is None:
            raise ValueError("compare takes g_over_gc, not g")

        if self.uses_bo:
            if any(d == 0 for d in self.delta):
                raise ValueError("the Born-Oppenheimer solver needs delta > 0; use solver=ed")
            largest = max(self.sizes) if self.command is Command.CONVERGENCE else self.n_max
            if self.quad_order is not None and self.quad_order < 2 * largest + 1:
                raise ValueError(
                    f"quad_order {self.quad_order} too low for N={largest}; need at least {2 * largest + 1}"
                )
            if self.n_levels > self.n_max and self.command is not Command.CONVERGENCE:
                raise ValueError(f"n_levels {self.n_levels} exceeds n_max {self.n_max}")
        if self.command in (Command.POPULATION, Command.FIT, Command.WAVEFUNCTION):
            if self.state >= self.n_levels:
                raise ValueError(f"state {self.state} must be below n_levels {self.n_levels}")
        if self.command is Command.CONVERGENCE and min(self.sizes) < 1:
            raise ValueError("sizes must be positive")
        if (
            self.command is Command.POPULATION
            and self.fit is not FitChoice.NONE
            and self.format is OutputFormat.CSV
        ):
            raise ValueError("population fits are only written as json; drop format=csv or fit")
        return self

    @property
    def uses_bo(self) -> bool:
        if self.command in (Command.POTENTIAL, Command.COMPARE):
            return True
        return self.solver.uses_bo

    @property
    def resolved_format(self) -> OutputFormat:
        if self.format is not None:
            return self.format
        if self.command is Command.POPULATION and self.fit is not FitChoice.NONE:
            return OutputFormat.JSON
        return OutputFormat.CSV

    @property
    def output_path(self) -> str:
        return self.output or f"{self.command.value}.{self.resolved_format.value}"

    def couplings(self, delta: float | None = None) -> list[float]:
        """Absolute couplings for `delta` (default: the first delta)."""
        delta = self.delta[0] if delta is None else delta
        if self.g is not None:
            return list(self.g)
        gc = critical_coupling(delta)
        return [ratio * gc for ratio in self.g_over_gc]


def describe_validation_error(e: ValidationError) -> str:
    parts = []
    for error in e.errors():
        location = ".".join(str(x) for x in error["loc"])
        message = error["msg"].removeprefix("Value error, ")
        parts.append(f"{location}: {message}" if location else message)
    return "; ".join(parts)


# g and g_over_gc are alternatives; a layer giving one replaces the other.
_COUPLING_KEYS = ("g", "g_over_gc")


def merge_layer(merged: dict, layer: dict) -> dict:
    given = [key for key in _COUPLING_KEYS if key in layer]
    if len(given) == 1:
        merged = {k: v for k, v in merged.items() if k not in _COUPLING_KEYS}
    return apply_patch(merged, layer)


def build_run_config(
    command: Command | str,
    config_file: str | None = None,
    flags: dict | None = None,
    patches: Iterable[str] = (),
) -> RunConfig:
    """
    Merge the configuration layers. `flags` maps dotted keys to values; None
    values are treated as not given.
    """
    merged = {}
    try:
        if config_file:
            merged = merge_layer(merged, read_config_file(config_file))
        merged = merge_layer(
            merged, {k: v for k, v in (flags or {}).items() if v is not None}
        )
        merged = merge_layer(merged, parse_key_value_args(list(patches)))
    except (argparse.ArgumentTypeError, ValueError, OSError) as e:
        raise UsageError(str(e)) from e
    merged["command"] = Command(command)

    try:
        return RunConfig.model_validate(merged)
    except ValidationError as e:
        raise UsageError(describe_validation_error(e)) from e
