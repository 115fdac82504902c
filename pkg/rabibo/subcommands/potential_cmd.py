import numpy as np

from ..artifacts import Artifact
from ..config import RunConfig
from ..model import (
    Branch,
    ModelParams,
    adiabatic_energy,
    double_well_strength,
    effective_force,
    effective_potential,
    is_double_well,
    landau_double_well,
    potential_minima,
    quartic_expansion,
)

COLUMNS = (
    "xi",
    "epsilon_minus",
    "epsilon_plus",
    "potential_minus",
    "potential_plus",
    "force_minus",
    "quartic_minus",
)


def potential_command(config: RunConfig, completed=None) -> Artifact:
    """Adiabatic surfaces and effective potentials on the position grid."""
    params = ModelParams(delta=config.delta[0], g=config.couplings()[0])
    xi = config.grid.values()
    c0, c2, c4 = quartic_expansion(params)
    table = np.column_stack(
        [
            xi,
            adiabatic_energy(params, Branch.MINUS, xi),
            adiabatic_energy(params, Branch.PLUS, xi),
            effective_potential(params, Branch.MINUS, xi),
            effective_potential(params, Branch.PLUS, xi),
            effective_force(params, Branch.MINUS, xi),
            c0 + c2 * xi**2 + c4 * xi**4,
        ]
    )
    extras = {
        "minima": potential_minima(params),
        "double_well": is_double_well(params),
        "landau_double_well": landau_double_well(params),
        "double_well_strength": double_well_strength(params),
        "quartic": {"c0": c0, "c2": c2, "c4": c4},
        "beta": params.beta,
        "g": params.g,
        "g_over_gc": params.g_over_gc,
    }
    return Artifact(
        command=config.command.value,
        columns=COLUMNS,
        rows=tuple(tuple(float(v) for v in row) for row in table),
        extras=extras,
    )
