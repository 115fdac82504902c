from ..artifacts import Artifact
from ..config import FitChoice, RunConfig
from ..fitting import classify_population, fit_distribution
from ..population import PhotonPopulation, population_from_bo, population_from_ed
from .spectra import solve_spectra


def populations(config: RunConfig) -> dict[str, PhotonPopulation]:
    """Populations of the configured state keyed by solver name."""
    bo, ed = solve_spectra(config)
    result = {}
    if bo is not None:
        result["bo"] = population_from_bo(bo, config.state, config.population_mode)
    if ed is not None:
        result["ed"] = population_from_ed(ed, config.state)
    return result


def describe_population(population: PhotonPopulation) -> dict:
    return {
        "source": population.source.value,
        "mean_n": population.mean_n,
        "even_mass": population.even_mass,
        "odd_mass": population.odd_mass,
        "deficit": population.deficit,
        "p": population.p,
        "even_part": population.even_part,
        "odd_part": population.odd_part,
    }


def describe_fits(population: PhotonPopulation, config: RunConfig) -> dict:
    if config.fit is FitChoice.ALL:
        classification = classify_population(population, config.subset, config.pin_shift)
        return {
            "selected": classification.selected.value,
            "tie_rule": classification.tie_rule,
            "fits": [fit.model_dump(mode="json") for fit in classification.fits],
        }
    fits = [
        fit_distribution(population, family, config.subset, config.pin_shift)
        for family in config.fit.families()
    ]
    return {"fits": [fit.model_dump(mode="json") for fit in fits]}


def population_command(config: RunConfig, completed=None) -> Artifact:
    """P(n) per solver with its even/odd split, optionally fitted."""
    pops = populations(config)
    columns = ["n", "fock_parity"] + [f"p_{name}" for name in pops]
    rows = tuple(
        (n, "even" if n % 2 == 0 else "odd", *(float(p.p[n]) for p in pops.values()))
        for n in range(config.n_max)
    )
    extras = {
        "state": config.state,
        "populations": {name: describe_population(p) for name, p in pops.items()},
    }
    if config.fit is not FitChoice.NONE:
        extras["fits"] = {name: describe_fits(p, config) for name, p in pops.items()}
    return Artifact(command=config.command.value, columns=tuple(columns), rows=rows, extras=extras)
