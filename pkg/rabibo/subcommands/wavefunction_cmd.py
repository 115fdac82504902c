import numpy as np

from ..artifacts import Artifact
from ..bo_solver import wavefunctions_on_grid
from ..config import RunConfig
from ..ed_solver import ed_components_on_grid
from .spectra import solve_spectra


def wavefunction_command(config: RunConfig, completed=None) -> Artifact:
    """
    psi and the two spin components of one state on the position grid.
    Columns: xi, then psi_bo, up_bo, down_bo and/or up_ed, down_ed.
    """
    bo, ed = solve_spectra(config)
    xi = config.grid.values()
    k = config.state
    columns = ["xi"]
    values = [xi]
    extras = {"state": k}
    if bo is not None:
        grid = wavefunctions_on_grid(bo, xi)
        columns += ["psi_bo", "up_bo", "down_bo"]
        values += [grid.psi[k], grid.components[k, 0], grid.components[k, 1]]
        extras["energy_bo"] = float(bo.energies[k])
    if ed is not None:
        components = ed_components_on_grid(ed, xi)
        columns += ["up_ed", "down_ed"]
        values += [components[k, 0], components[k, 1]]
        extras["energy_ed"] = float(ed.energies[k])
    table = np.column_stack(values)
    return Artifact(
        command=config.command.value,
        columns=tuple(columns),
        rows=tuple(tuple(float(v) for v in row) for row in table),
        extras=extras,
    )
