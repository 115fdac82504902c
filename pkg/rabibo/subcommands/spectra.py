"""Solver calls shared by the command handlers."""

from ..bo_solver import BOSpectrum, solve_bo
from ..config import RunConfig
from ..ed_solver import EDSpectrum, solve_ed
from ..model import ModelParams, RabiParams


def solve_spectra(
    config: RunConfig,
    g: float | None = None,
) -> tuple[BOSpectrum | None, EDSpectrum | None]:
    """Solve with whichever solvers the config selects, at its single point."""
    delta = config.delta[0]
    g = config.couplings()[0] if g is None else g
    bo = ed = None
    if config.solver.uses_bo:
        bo = solve_bo(
            ModelParams(delta=delta, g=g),
            config.branch,
            config.n_max,
            config.n_levels,
            config.quad_order,
            config.bo_method,
        )
    if config.solver.uses_ed:
        ed = solve_ed(RabiParams(delta=delta, g=g), config.n_max, config.n_levels, config.ed_method)
    return bo, ed
