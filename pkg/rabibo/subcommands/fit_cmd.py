from ..artifacts import Artifact
from ..config import RunConfig
from ..fitting import Classification, classify_population
from .population_cmd import populations

COLUMNS = (
    "source",
    "family",
    "amplitude",
    "scale",
    "shift",
    "rss",
    "points_used",
    "subset",
    "selected",
)


def fit_command(config: RunConfig, completed=None) -> Artifact:
    """Fit all three families to each solver's population and pick one."""
    rows = []
    for name, population in populations(config).items():
        classification: Classification = classify_population(
            population, config.subset, config.pin_shift
        )
        for fit in classification.fits:
            rows.append(
                (
                    name,
                    fit.family.value,
                    fit.amplitude,
                    fit.scale,
                    fit.shift,
                    fit.rss,
                    fit.points_used,
                    fit.subset.value,
                    fit.family is classification.selected,
                )
            )
    extras = {"state": config.state, "tie_rule": Classification.model_fields["tie_rule"].default}
    return Artifact(command=config.command.value, columns=COLUMNS, rows=tuple(rows), extras=extras)
