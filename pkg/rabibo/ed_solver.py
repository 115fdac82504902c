"""
Exact diagonalization of the full Rabi Hamiltonian
    H = a^dagger a + 1/2 + (delta/2) sigma_x + g sigma_z (a + a^dagger)
in the truncated product basis |n> x |sigma_z>, index 2n + s with s = 0 for
up and s = 1 for down. The zero-point 1/2 is included so energies line up
with the Born-Oppenheimer solver.
"""

import logging
import math
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict

from .constants import app_configuration
from .eigen import SymmetricMatrix, eigh, fix_signs, resolve_degenerate
from .exceptions import ExceptionContext
from .model import RabiParams
from .quadrature import FockBasisSpec, hermite_functions

logger = logging.getLogger(__name__)

# sigma_z eigenvalue of spin index s.
_SIGMA_Z = (1.0, -1.0)


class EDSpectrum(BaseModel):
    """
    `states[k, n, s]` = <n, s|Psi_k>; `parity[k]` is the eigenvalue of
    sigma_x (-1)^{a^dagger a}.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    params: RabiParams
    n_max: int
    energies: np.ndarray
    states: np.ndarray
    parity: tuple[int, ...]

    def __len__(self):
        return self.energies.shape[0]


def build_ed_matrix(params: RabiParams, basis: FockBasisSpec) -> SymmetricMatrix:
    n_max = basis.n_max
    h = np.zeros((2 * n_max, 2 * n_max))
    for n in range(n_max):
        for s in (0, 1):
            h[2 * n + s, 2 * n + s] = n + 0.5
        h[2 * n, 2 * n + 1] = h[2 * n + 1, 2 * n] = 0.5 * params.delta
        if n + 1 < n_max:
            amplitude = params.g * math.sqrt(n + 1)
            for s in (0, 1):
                i, j = 2 * (n + 1) + s, 2 * n + s
                h[i, j] = h[j, i] = _SIGMA_Z[s] * amplitude
    return SymmetricMatrix.from_array(h)


def parity_operator(basis: FockBasisSpec) -> np.ndarray:
    n_max = basis.n_max
    pi = np.zeros((2 * n_max, 2 * n_max))
    for n in range(n_max):
        sign = 1.0 if n % 2 == 0 else -1.0
        pi[2 * n, 2 * n + 1] = pi[2 * n + 1, 2 * n] = sign
    return pi


def _solve_full(params: RabiParams, basis: FockBasisSpec, n_levels: int):
    dim = 2 * basis.n_max
    h = build_ed_matrix(params, basis)
    solved = eigh(h, n_lowest=min(n_levels + 1, dim))
    solved = resolve_degenerate(solved, parity_operator(basis))
    return solved.values[:n_levels], solved.vectors[:, :n_levels]


def _solve_parity_blocks(params: RabiParams, basis: FockBasisSpec, n_levels: int):
    """
    In the basis |n, sigma_x = s> the parity is s (-1)^n, so each parity sector
    is a chain over n with sigma_x = parity * (-1)^n, diagonal
    n + 1/2 + (delta/2) sigma_x and hopping g sqrt(n+1).
    """
    n_max = basis.n_max
    n = np.arange(n_max)
    hopping = params.g * np.sqrt(np.arange(1, n_max))
    values, vectors = [], []
    for parity in (-1, 1):
        sigma_x = parity * np.where(n % 2 == 0, 1.0, -1.0)
        chain = np.diag(n + 0.5 + 0.5 * params.delta * sigma_x)
        chain += np.diag(hopping, 1) + np.diag(hopping, -1)
        solved = eigh(SymmetricMatrix.from_array(chain), n_lowest=min(n_levels, n_max))
        # |sigma_x = s> = (|up> + s |down>)/sqrt(2)
        product = np.zeros((2 * n_max, len(solved)))
        product[0::2, :] = solved.vectors / math.sqrt(2.0)
        product[1::2, :] = (sigma_x[:, np.newaxis] * solved.vectors) / math.sqrt(2.0)
        values.append(solved.values)
        vectors.append(product)
    values = np.concatenate(values)
    vectors = np.concatenate(vectors, axis=1)
    order = np.argsort(values, kind="stable")[:n_levels]
    return values[order], vectors[:, order]


def solve_ed(
    params: RabiParams,
    n_max: int | None = None,
    n_levels: int | None = None,
    method: Literal["full", "parity"] = "full",
) -> EDSpectrum:
    """
    K lowest eigenpairs of the 2N x 2N Hamiltonian. The reference path
    (`method="full"`) diagonalizes the whole matrix; degenerate levels are
    rotated into parity eigenstates. `method="parity"` solves the two parity
    sectors separately.
    """
    n_max = n_max if n_max is not None else app_configuration["default_n_max"]
    if n_levels is None:
        n_levels = min(app_configuration["default_n_levels"], 2 * n_max)
    if not 1 <= n_levels <= 2 * n_max:
        raise ValueError(f"n_levels={n_levels} must lie in 1..2N={2 * n_max}.")

    with ExceptionContext(f"solve_ed delta={params.delta:g} g={params.g:g} N={n_max}"):
        basis = FockBasisSpec(n_max=n_max)
        if method == "full":
            energies, vectors = _solve_full(params, basis, n_levels)
        elif method == "parity":
            energies, vectors = _solve_parity_blocks(params, basis, n_levels)
        else:
            raise ValueError(f"Unknown method '{method}'.")

    vectors = fix_signs(vectors)
    pi = parity_operator(basis)
    expectations = np.einsum("ik,ij,jk->k", vectors, pi, vectors)
    states = vectors.T.reshape(n_levels, n_max, 2).copy()
    energies = np.array(energies)
    for a in (states, energies):
        a.setflags(write=False)
    logger.debug("solve_ed N=%d K=%d E0=%.12g", n_max, n_levels, energies[0])

    return EDSpectrum(
        params=params,
        n_max=n_max,
        energies=energies,
        states=states,
        parity=tuple(1 if x > 0 else -1 for x in expectations),
    )


def parity_expectations(spectrum: EDSpectrum) -> np.ndarray:
    pi = parity_operator(FockBasisSpec(n_max=spectrum.n_max))
    flat = spectrum.states.reshape(len(spectrum), -1)
    return np.einsum("ki,ij,kj->k", flat, pi, flat)


def photon_number_ed(spectrum: EDSpectrum, state_index: int = 0) -> float:
    """<a^dagger a> = sum_{n, sigma} n |d(n, sigma)|^2."""
    if not 0 <= state_index < len(spectrum):
        raise IndexError(f"State index {state_index} outside 0..{len(spectrum) - 1}.")
    weights = np.sum(spectrum.states[state_index] ** 2, axis=1)
    return float(np.dot(np.arange(spectrum.n_max), weights))


def ed_components_on_grid(spectrum: EDSpectrum, xi_grid) -> np.ndarray:
    """Phi_k(xi, sigma) = sum_n d_k(n, sigma) h_n(xi), shape (K, 2, len(xi))."""
    xi = np.asarray(xi_grid, dtype=float)
    table = hermite_functions(spectrum.n_max, xi)
    return np.einsum("kns,np->ksp", spectrum.states, table)
