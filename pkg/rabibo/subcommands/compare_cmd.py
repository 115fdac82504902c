from ..artifacts import Artifact
from ..config import RunConfig
from ..sweep import ComparisonRow, compare_solvers

COLUMNS = tuple(ComparisonRow.model_fields)


def compare_command(config: RunConfig, completed=None) -> Artifact:
    """Ground-state BO against ED over the delta x g/g_c grid."""
    rows = compare_solvers(
        config.delta,
        config.g_over_gc,
        n_max=config.n_max,
        quad_order=config.quad_order,
        concurrency=config.concurrency,
        completed=completed,
    )
    return Artifact(
        command=config.command.value,
        columns=COLUMNS,
        rows=tuple(tuple(getattr(row, c) for c in COLUMNS) for row in rows),
    )
