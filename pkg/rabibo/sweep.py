"""
Parameter sweeps: energies, parities and photon numbers over a coupling grid,
BO-versus-ED comparisons over (delta, g) grids, and truncation convergence.

Points are independent. They run on worker threads under a semaphore and are
gathered back in grid order, so results never depend on scheduling.
"""

import asyncio
from enum import Enum
import logging
from typing import Callable, Sequence, TypeVar

import numpy as np
from pydantic import BaseModel, ConfigDict

from .bo_solver import FockParity, solve_bo, total_parity
from .constants import app_configuration
from .ed_solver import photon_number_ed, solve_ed
from .exceptions import ExceptionContext
from .model import Branch, ModelParams, RabiParams, critical_coupling
from .population import population_from_bo, population_from_ed, total_variation

logger = logging.getLogger(__name__)

T = TypeVar("T")

# Photon numbers are reported for at most this many of the lowest states.
PHOTON_STATES = 4


class Solver(str, Enum):
    BO = "bo"
    ED = "ed"
    BOTH = "both"

    @property
    def uses_bo(self) -> bool:
        return self is not Solver.ED

    @property
    def uses_ed(self) -> bool:
        return self is not Solver.BO


class SolverRecord(BaseModel):
    """
    `parity` is the total parity of the full model. BO records also carry the
    Fock parity of each state's coefficient support, which is their label.
    """

    model_config = ConfigDict(frozen=True)

    energies: tuple[float, ...]
    parity: tuple[int, ...]
    fock_parity: tuple[FockParity, ...] | None = None
    photon_numbers: tuple[float, ...]


class SweepPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    g: float
    g_over_gc: float
    bo: SolverRecord | None = None
    ed: SolverRecord | None = None


class SweepTable(BaseModel):
    model_config = ConfigDict(frozen=True)

    delta: float
    n_levels: int
    solver: Solver
    branch: Branch
    points: tuple[SweepPoint, ...]


class ComparisonRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    delta: float
    g: float
    g_over_gc: float
    energy_bo: float
    energy_ed: float
    energy_difference: float
    population_distance: float
    photon_number_bo: float
    photon_number_ed: float


class ConvergenceRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_max: int
    energy_bo: float | None = None
    energy_ed: float | None = None


async def run_points(
    jobs: Sequence[Callable[[], T]],
    concurrency: int | None = None,
    completed: Callable[[], None] | None = None,
) -> list[T]:
    """
    Run blocking jobs on worker threads, at most `concurrency` at a time.
    Results come back in job order. The first failure propagates.
    """
    semaphore = asyncio.Semaphore(concurrency or app_configuration["default_concurrency"])

    def guarded(job):
        try:
            return job()
        except Exception as e:
            ExceptionContext.attach(e)
            raise

    async def sem_task(job):
        async with semaphore:
            result = await asyncio.to_thread(guarded, job)
        if completed:
            completed()
        return result

    return await asyncio.gather(*[sem_task(job) for job in jobs])


def _run_blocking(jobs, concurrency, completed, caller: str) -> list:
    """Drive run_points to completion from synchronous code."""
    try:
        asyncio.get_running_loop()
    except RuntimeError:
        return asyncio.run(run_points(jobs, concurrency, completed))
    raise RuntimeError(
        f"{caller} starts its own event loop and cannot be called from a running one; "
        "await run_points with solve_point or compare_point jobs instead."
    )


def _check_coupling_grid(g_grid) -> list[float]:
    grid = [float(g) for g in g_grid]
    if not grid:
        raise ValueError("Coupling grid is empty.")
    if any(g < 0 for g in grid):
        raise ValueError("Coupling grid values must be non-negative.")
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise ValueError("Coupling grid must be ascending.")
    return grid


def solve_point(
    delta: float,
    g: float,
    n_levels: int,
    solver: Solver,
    n_max: int | None = None,
    quad_order: int | None = None,
    branch: Branch = Branch.MINUS,
) -> SweepPoint:
    """One sweep row. Raises rather than returning a partial row."""
    count = min(n_levels, PHOTON_STATES)
    bo = ed = None
    if solver.uses_bo:
        spectrum = solve_bo(
            ModelParams(delta=delta, g=g), branch, n_max, n_levels, quad_order
        )
        bo = SolverRecord(
            energies=tuple(float(e) for e in spectrum.energies),
            parity=tuple(total_parity(p, branch) for p in spectrum.fock_parity),
            fock_parity=spectrum.fock_parity,
            photon_numbers=tuple(
                population_from_bo(spectrum, k).mean_n for k in range(count)
            ),
        )
    if solver.uses_ed:
        spectrum = solve_ed(RabiParams(delta=delta, g=g), n_max, n_levels)
        ed = SolverRecord(
            energies=tuple(float(e) for e in spectrum.energies),
            parity=spectrum.parity,
            photon_numbers=tuple(photon_number_ed(spectrum, k) for k in range(count)),
        )
    return SweepPoint(g=g, g_over_gc=g / critical_coupling(delta), bo=bo, ed=ed)


def sweep_coupling(
    template: RabiParams,
    g_grid: Sequence[float],
    n_levels: int | None = None,
    solver: Solver = Solver.BOTH,
    n_max: int | None = None,
    quad_order: int | None = None,
    branch: Branch = Branch.MINUS,
    concurrency: int | None = None,
    completed: Callable[[], None] | None = None,
) -> SweepTable:
    """
    Energies of the K lowest states, their parity labels and the photon
    numbers of the lowest min(K, 4), at every g of an ascending grid. The
    template supplies delta; its g is ignored.

    Blocks until every point is solved, so it must not be called from inside
    a running event loop (RuntimeError). Async callers await run_points.
    """
    grid = _check_coupling_grid(g_grid)
    n_levels = n_levels or app_configuration["default_n_levels"]
    logger.info(
        "sweep delta=%g points=%d solver=%s", template.delta, len(grid), solver.value
    )
    jobs = [
        (lambda g=g: solve_point(template.delta, g, n_levels, solver, n_max, quad_order, branch))
        for g in grid
    ]
    points = _run_blocking(jobs, concurrency, completed, "sweep_coupling")
    return SweepTable(
        delta=template.delta,
        n_levels=n_levels,
        solver=solver,
        branch=branch,
        points=tuple(points),
    )


def compare_point(
    delta: float,
    ratio: float,
    n_max: int | None = None,
    quad_order: int | None = None,
) -> ComparisonRow:
    params = ModelParams.from_g_over_gc(delta, ratio)
    bo = solve_bo(params, Branch.MINUS, n_max, 1, quad_order)
    ed = solve_ed(params, n_max, 1)
    bo_population = population_from_bo(bo, 0)
    ed_population = population_from_ed(ed, 0)
    energy_bo, energy_ed = float(bo.energies[0]), float(ed.energies[0])
    return ComparisonRow(
        delta=delta,
        g=params.g,
        g_over_gc=ratio,
        energy_bo=energy_bo,
        energy_ed=energy_ed,
        energy_difference=abs(energy_bo - energy_ed),
        population_distance=total_variation(bo_population, ed_population),
        photon_number_bo=bo_population.mean_n,
        photon_number_ed=ed_population.mean_n,
    )


def compare_solvers(
    deltas: Sequence[float],
    ratios: Sequence[float],
    n_max: int | None = None,
    quad_order: int | None = None,
    concurrency: int | None = None,
    completed: Callable[[], None] | None = None,
) -> tuple[ComparisonRow, ...]:
    """
    Ground-state BO against ED for every (delta, g/g_c) pair, delta-major.
    Like sweep_coupling, it raises RuntimeError inside a running event loop.
    """
    jobs = [
        (lambda d=d, r=r: compare_point(float(d), float(r), n_max, quad_order))
        for d in deltas
        for r in ratios
    ]
    return tuple(_run_blocking(jobs, concurrency, completed, "compare_solvers"))


def convergence_table(
    params: RabiParams,
    sizes: Sequence[int],
    solver: Solver = Solver.BOTH,
    quad_order: int | None = None,
) -> tuple[ConvergenceRow, ...]:
    """Ground energy against truncation size N."""
    sizes = [int(n) for n in sizes]
    if not sizes or min(sizes) < 1:
        raise ValueError("Truncation sizes must be positive integers.")
    rows = []
    for n_max in sizes:
        energy_bo = energy_ed = None
        if solver.uses_bo:
            bo_params = ModelParams(delta=params.delta, g=params.g)
            energy_bo = float(solve_bo(bo_params, Branch.MINUS, n_max, 1, quad_order).energies[0])
        if solver.uses_ed:
            energy_ed = float(solve_ed(params, n_max, 1).energies[0])
        rows.append(ConvergenceRow(n_max=n_max, energy_bo=energy_bo, energy_ed=energy_ed))
    logger.debug("convergence sizes=%s", sizes)
    return tuple(rows)


def ground_photon_numbers(table: SweepTable, solver: Solver = Solver.ED) -> np.ndarray:
    records = [point.ed if solver is Solver.ED else point.bo for point in table.points]
    return np.array([record.photon_numbers[0] for record in records])
