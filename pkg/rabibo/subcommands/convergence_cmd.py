from ..artifacts import Artifact
from ..config import RunConfig
from ..model import RabiParams
from ..sweep import convergence_table


def convergence_command(config: RunConfig, completed=None) -> Artifact:
    """
    Ground energy per truncation size, with the change from the previous size
    (empty on the first row).
    """
    table = convergence_table(
        RabiParams(delta=config.delta[0], g=config.couplings()[0]),
        config.sizes,
        config.solver,
        config.quad_order,
    )
    names = [s for s in ("bo", "ed") if getattr(config.solver, f"uses_{s}")]
    columns = ["n_max"] + [f"energy_{s}" for s in names] + [f"change_{s}" for s in names]

    rows = []
    previous = None
    for row in table:
        energies = [getattr(row, f"energy_{s}") for s in names]
        changes = (
            [None] * len(names)
            if previous is None
            else [abs(e - p) for e, p in zip(energies, previous)]
        )
        rows.append((row.n_max, *energies, *changes))
        previous = energies
    return Artifact(command=config.command.value, columns=tuple(columns), rows=tuple(rows))
