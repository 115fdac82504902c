"""
Least-squares fits of photon populations to the Poisson, GUE and GOE
closed forms, and classification by smallest residual.

The fitted curve is A f((n - n0)/w) with f one of

    Poisson  f(s) = exp(-s)
    GUE      f(s) = (32/pi^2) s^2 exp(-4 s^2/pi)
    GOE      f(s) = (pi/2) s exp(-pi s^2/4)

GOE and GUE are zero for s < 0; Poisson is exp(-s) on every abscissa, so its
shift only trades against A. Fits run on data scaled by max P(n) and are scaled
back afterwards, so multiplying a population by a constant only rescales A.
"""

from enum import Enum
import logging
import math
from typing import Callable

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
import scipy.optimize

from .constants import app_configuration
from .population import PhotonPopulation

logger = logging.getLogger(__name__)


class Family(str, Enum):
    # Declaration order is the tie-break order of classify_population.
    POISSON = "Poisson"
    GOE = "GOE"
    GUE = "GUE"

    @classmethod
    def parse(cls, text: str) -> "Family":
        for family in cls:
            if family.value.lower() == text.strip().lower():
                return family
        raise ValueError(
            f"Unknown distribution family '{text}'. Choose from {', '.join(f.value for f in cls)}."
        )


class Subset(str, Enum):
    ALL = "all"
    EVEN = "even"
    ODD = "odd"


def _poisson(s):
    return np.exp(-s)


def _gue(s):
    return (32.0 / math.pi**2) * s * s * np.exp(-4.0 * s * s / math.pi)


def _goe(s):
    return 0.5 * math.pi * s * np.exp(-0.25 * math.pi * s * s)


SHAPES: dict[Family, Callable[[np.ndarray], np.ndarray]] = {
    Family.POISSON: _poisson,
    Family.GOE: _goe,
    Family.GUE: _gue,
}


def distribution_shape(family: Family, s) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    if family is Family.POISSON:
        return _poisson(s)
    out = np.zeros_like(s)
    support = s >= 0
    out[support] = SHAPES[family](s[support])
    return out


class DistributionFit(BaseModel):
    model_config = ConfigDict(frozen=True)

    family: Family
    subset: Subset = Subset.ALL
    amplitude: float = Field(..., gt=0, description="A")
    scale: float = Field(..., gt=0, description="w")
    shift: float = Field(..., ge=0, description="n0")
    rss: float = Field(..., ge=0, description="Residual sum of squares")
    points_used: int = Field(..., ge=1)
    shift_pinned: bool = False

    def evaluate(self, n) -> np.ndarray:
        s = (np.asarray(n, dtype=float) - self.shift) / self.scale
        return self.amplitude * distribution_shape(self.family, s)

    def residual_sum(self, population: PhotonPopulation) -> float:
        n, p = fit_points(population, self.subset)
        return float(np.sum((p - self.evaluate(n)) ** 2))


class Classification(BaseModel):
    model_config = ConfigDict(frozen=True)

    selected: Family
    fits: tuple[DistributionFit, ...]
    tie_rule: str = "lowest rss; ties go to " + " < ".join(f.value for f in Family)

    def fit(self, family: Family) -> DistributionFit:
        for candidate in self.fits:
            if candidate.family is family:
                return candidate
        raise KeyError(family)


def fit_points(population: PhotonPopulation, subset: Subset = Subset.ALL):
    """Abscissae and values entering a fit: the chosen parity, above the floor."""
    n = population.n
    p = population.p
    keep = p >= app_configuration["population_floor"]
    if subset is Subset.EVEN:
        keep &= n % 2 == 0
    elif subset is Subset.ODD:
        keep &= n % 2 == 1
    return n[keep].astype(float), np.array(p[keep])


def _nelder_mead(objective, x0: np.ndarray, steps: np.ndarray):
    simplex = np.vstack([x0] + [x0 + step * row for step, row in zip(steps, np.eye(x0.size))])
    tolerance = app_configuration["fit_tolerance"]
    result = scipy.optimize.minimize(
        objective,
        x0,
        method="Nelder-Mead",
        options={
            "maxiter": app_configuration["fit_max_iterations"],
            "xatol": tolerance,
            "fatol": tolerance,
            "initial_simplex": simplex,
        },
    )
    return result.x, float(result.fun)


def _rss_function(family: Family, n: np.ndarray, y: np.ndarray, shift=None):
    """
    Objective over x = (log A, log w[, sqrt n0]). With `shift` given, n0 is
    held fixed and x has two entries.
    """

    def rss(x):
        amplitude, scale = math.exp(min(x[0], 700.0)), math.exp(min(x[1], 700.0))
        n0 = shift if shift is not None else x[2] * x[2]
        value = float(np.sum((y - amplitude * distribution_shape(family, (n - n0) / scale)) ** 2))
        return value if math.isfinite(value) else math.inf

    return rss


def fit_distribution(
    population: PhotonPopulation,
    family: Family,
    subset: Subset = Subset.ALL,
    pin_shift: bool = False,
) -> DistributionFit:
    """
    Multi-start Nelder-Mead over (A, w, n0) from the grid
    A in {max P, max P/2, 2 max P}, w in {N/10, N/4, N/2},
    n0 in {0, argmax/2, argmax}; the best local optimum wins. With `pin_shift`
    n0 stays at 0 and only (A, w) are searched.
    """
    n, p = fit_points(population, subset)
    if n.size < app_configuration["min_fit_points"]:
        raise ValueError(
            f"Only {n.size} population values above the floor in subset '{subset.value}'; "
            f"need at least {app_configuration['min_fit_points']} to fit."
        )

    peak = float(np.max(p))
    y = p / peak
    n_peak = float(n[np.argmax(p)])
    size = population.p.shape[0]
    starts = [
        (math.log(a), math.log(w))
        for a in (1.0, 0.5, 2.0)
        for w in (size / 10, size / 4, size / 2)
    ]

    best_x, best_rss, best_shift = None, math.inf, 0.0
    if pin_shift:
        objective = _rss_function(family, n, y, shift=0.0)
        for start in starts:
            x, value = _nelder_mead(objective, np.array(start), np.array([0.25, 0.25]))
            if value < best_rss:
                best_x, best_rss = x, value
    else:
        objective = _rss_function(family, n, y)
        for start in starts:
            for n0 in (0.0, 0.5 * n_peak, n_peak):
                x0 = np.array(start + (math.sqrt(n0),))
                x, value = _nelder_mead(objective, x0, np.array([0.25, 0.25, 0.5]))
                if value < best_rss:
                    best_x, best_rss, best_shift = x, value, float(x[2] * x[2])

    amplitude = math.exp(best_x[0]) * peak
    scale = math.exp(best_x[1])
    s = (n - best_shift) / scale
    rss = float(np.sum((p - amplitude * distribution_shape(family, s)) ** 2))
    logger.debug(
        "fit %s subset=%s A=%.6g w=%.6g n0=%.6g rss=%.3e",
        family.value, subset.value, amplitude, scale, best_shift, rss,
    )
    return DistributionFit(
        family=family,
        subset=subset,
        amplitude=amplitude,
        scale=scale,
        shift=best_shift,
        rss=rss,
        points_used=int(n.size),
        shift_pinned=pin_shift,
    )


def classify_population(
    population: PhotonPopulation,
    subset: Subset = Subset.ALL,
    pin_shift: bool = False,
) -> Classification:
    fits = tuple(fit_distribution(population, family, subset, pin_shift) for family in Family)
    lowest = min(fit.rss for fit in fits)
    # Ties within rounding go to the earlier family.
    threshold = lowest + 1e-12 * max(lowest, np.finfo(float).tiny)
    selected = next(fit.family for fit in fits if fit.rss <= threshold)
    return Classification(selected=selected, fits=fits)
