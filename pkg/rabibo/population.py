"""
Photon populations P(n) over the Fock index, from either solver.
"""

from enum import Enum
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict

from .bo_solver import BOSpectrum
from .ed_solver import EDSpectrum
from .model import adiabatic_eigenvector
from .quadrature import (
    FockBasisSpec,
    QuadratureRule,
    check_order,
    gauss_hermite_rule,
    quadrature_matrix,
)


class PopulationSource(str, Enum):
    BO_PROJECTED = "bo-projected"
    BO_COEFFICIENTS = "bo-coefficients"
    ED = "ed"


class PhotonPopulation(BaseModel):
    """
    Probability mass over Fock indices 0..N-1. `deficit` is the weight lost to
    truncation before renormalization (zero unless the source is projected).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    p: np.ndarray
    source: PopulationSource
    deficit: float = 0.0

    @property
    def n(self) -> np.ndarray:
        return np.arange(self.p.shape[0])

    @property
    def even_part(self) -> np.ndarray:
        return self.p[0::2]

    @property
    def odd_part(self) -> np.ndarray:
        return self.p[1::2]

    @property
    def even_mass(self) -> float:
        return float(np.sum(self.even_part))

    @property
    def odd_mass(self) -> float:
        return float(np.sum(self.odd_part))

    @property
    def mean_n(self) -> float:
        return float(np.dot(self.n, self.p))


def _frozen(p: np.ndarray) -> np.ndarray:
    p = np.array(p, dtype=float)
    p.setflags(write=False)
    return p


def _check_index(count: int, state_index: int) -> None:
    if not 0 <= state_index < count:
        raise IndexError(f"State index {state_index} outside 0..{count - 1}.")


def population_from_bo(
    spectrum: BOSpectrum,
    state_index: int = 0,
    mode: Literal["projected", "coefficients"] = "projected",
    rule: QuadratureRule | None = None,
) -> PhotonPopulation:
    """
    `coefficients`: P(n) = c_k(n)^2, the population of psi alone.
    `projected`: P(n) = sum_sigma |<n|Phi_k(., sigma)>|^2 for the two-component
    state Phi = phi_branch * psi, renormalized over n < N.
    """
    _check_index(len(spectrum), state_index)
    coefficients = spectrum.coeffs[state_index]

    if mode == "coefficients":
        return PhotonPopulation(
            p=_frozen(coefficients**2), source=PopulationSource.BO_COEFFICIENTS
        )
    if mode != "projected":
        raise ValueError(f"Unknown population mode '{mode}'.")

    basis = FockBasisSpec(n_max=spectrum.n_max)
    rule = rule or gauss_hermite_rule(spectrum.quad_order)
    check_order(basis, rule)
    phi = adiabatic_eigenvector(spectrum.params, spectrum.branch, rule.nodes)
    p = np.zeros(spectrum.n_max)
    for component in phi:
        amplitudes = quadrature_matrix(component, basis, rule) @ coefficients
        p += amplitudes**2
    total = float(np.sum(p))
    return PhotonPopulation(
        p=_frozen(p / total),
        source=PopulationSource.BO_PROJECTED,
        deficit=1.0 - total,
    )


def population_from_ed(spectrum: EDSpectrum, state_index: int = 0) -> PhotonPopulation:
    _check_index(len(spectrum), state_index)
    p = np.sum(spectrum.states[state_index] ** 2, axis=1)
    return PhotonPopulation(p=_frozen(p), source=PopulationSource.ED)


def photon_number_bo(
    spectrum: BOSpectrum,
    state_index: int = 0,
    mode: Literal["projected", "coefficients"] = "projected",
) -> float:
    return population_from_bo(spectrum, state_index, mode).mean_n


def total_variation(a: PhotonPopulation, b: PhotonPopulation) -> float:
    """Half the l1 distance; the shorter population is padded with zeros."""
    size = max(a.p.shape[0], b.p.shape[0])
    pa = np.zeros(size)
    pb = np.zeros(size)
    pa[: a.p.shape[0]] = a.p
    pb[: b.p.shape[0]] = b.p
    return 0.5 * float(np.sum(np.abs(pa - pb)))
