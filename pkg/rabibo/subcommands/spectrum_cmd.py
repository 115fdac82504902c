from ..artifacts import Artifact
from ..bo_solver import total_parity
from ..config import RunConfig
from ..model import critical_coupling
from .spectra import solve_spectra


def spectrum_command(config: RunConfig, completed=None) -> Artifact:
    """
    K lowest levels, one row per level index. parity_bo is the Fock parity of
    the BO coefficients; parity_ed and the JSON extra total_parity_bo are
    total parities.
    """
    bo, ed = solve_spectra(config)
    g = config.couplings()[0]

    columns = ["index"]
    if bo is not None:
        columns.append("energy_bo")
    if ed is not None:
        columns.append("energy_ed")
    if bo is not None:
        columns.append("parity_bo")
    if ed is not None:
        columns.append("parity_ed")

    rows = []
    for k in range(config.n_levels):
        row = {"index": k}
        if bo is not None:
            row["energy_bo"] = float(bo.energies[k])
            row["parity_bo"] = bo.fock_parity[k].value
        if ed is not None:
            row["energy_ed"] = float(ed.energies[k])
            row["parity_ed"] = ed.parity[k]
        rows.append(tuple(row[c] for c in columns))

    extras = {"g": g, "g_over_gc": g / critical_coupling(config.delta[0])}
    if bo is not None:
        extras["total_parity_bo"] = [total_parity(p, bo.branch) for p in bo.fock_parity]
    return Artifact(command=config.command.value, columns=tuple(columns), rows=tuple(rows), extras=extras)
