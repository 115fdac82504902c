from ..artifacts import Artifact
from ..config import RunConfig
from ..model import RabiParams
from ..sweep import PHOTON_STATES, Solver, SolverRecord, sweep_coupling


def _parity_cells(solver: Solver, record: SolverRecord) -> list:
    if solver is Solver.BO:
        return [p.value for p in record.fock_parity] + list(record.parity)
    return list(record.parity)


def sweep_command(config: RunConfig, completed=None) -> Artifact:
    """
    One row per coupling: energy_<solver>_<k> and parity_<solver>_<k> for the K
    lowest levels, photons_<solver>_<k> for the lowest min(K, 4). BO parity is
    the Fock parity (even/odd), followed by total_parity_bo_<k>; ED parity is
    the total parity (+1/-1).
    """
    table = sweep_coupling(
        RabiParams(delta=config.delta[0], g=0.0),
        config.couplings(),
        n_levels=config.n_levels,
        solver=config.solver,
        n_max=config.n_max,
        quad_order=config.quad_order,
        branch=config.branch,
        concurrency=config.concurrency,
        completed=completed,
    )
    solvers = [s for s in (Solver.BO, Solver.ED) if getattr(config.solver, f"uses_{s.value}")]
    levels = range(config.n_levels)
    photons = range(min(config.n_levels, PHOTON_STATES))

    columns = ["g", "g_over_gc"]
    for solver in solvers:
        columns += [f"energy_{solver.value}_{k}" for k in levels]
        columns += [f"parity_{solver.value}_{k}" for k in levels]
        if solver is Solver.BO:
            columns += [f"total_parity_bo_{k}" for k in levels]
        columns += [f"photons_{solver.value}_{k}" for k in photons]

    rows = []
    for point in table.points:
        row = [point.g, point.g_over_gc]
        for solver in solvers:
            record = getattr(point, solver.value)
            row += list(record.energies) + _parity_cells(solver, record) + list(record.photon_numbers)
        rows.append(tuple(row))
    return Artifact(command=config.command.value, columns=tuple(columns), rows=tuple(rows))
