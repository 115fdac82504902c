"""
Second diagonalization of the Born-Oppenheimer scheme.

For a chosen adiabatic branch the slow oscillator sees H_0 + eps(xi). In the
truncated Fock basis this is the N x N matrix
    M[n, m] = (n + 1/2) delta_nm + <n|eps|m>,
whose eigenvectors are the Fock coefficients of psi(xi). The two-component
state is Phi(xi, sigma) = phi_branch(xi)_sigma * psi(xi).
"""

from enum import Enum
import logging
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict

from .constants import app_configuration, default_quad_order
from .eigen import SymmetricMatrix, eigh, fix_signs, resolve_degenerate
from .exceptions import ExceptionContext
from .model import Branch, ModelParams, adiabatic_eigenvector, adiabatic_energy
from .quadrature import (
    FockBasisSpec,
    QuadratureRule,
    check_order,
    gauss_hermite_rule,
    hermite_functions,
    potential_matrix,
)

logger = logging.getLogger(__name__)


class FockParity(str, Enum):
    EVEN = "even"
    ODD = "odd"

    @property
    def sign(self) -> int:
        return 1 if self is FockParity.EVEN else -1


def fock_parity_of(coefficients: np.ndarray) -> FockParity:
    """Parity of the Fock indices carrying the (majority of the) weight."""
    coefficients = np.asarray(coefficients)
    even_mass = float(np.sum(coefficients[0::2] ** 2))
    odd_mass = float(np.sum(coefficients[1::2] ** 2))
    return FockParity.EVEN if even_mass >= odd_mass else FockParity.ODD


def total_parity(fock_parity: FockParity, branch: Branch) -> int:
    """
    Eigenvalue of sigma_x (-1)^{a^dagger a} carried by phi_branch * psi when psi
    has the given Fock parity. sigma_x phi_minus(-xi) = -phi_minus(xi) while
    sigma_x phi_plus(-xi) = +phi_plus(xi).
    """
    return -fock_parity.sign if branch is Branch.MINUS else fock_parity.sign


class BOSpectrum(BaseModel):
    """
    Lowest eigenpairs of the branch matrix. `coeffs[k, n]` = <n|psi_k>.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    params: ModelParams
    branch: Branch
    n_max: int
    quad_order: int
    energies: np.ndarray
    coeffs: np.ndarray
    fock_parity: tuple[FockParity, ...]

    def __len__(self):
        return self.energies.shape[0]


class WavefunctionGrid(BaseModel):
    """
    psi[k, p] = psi_k(xi_p); components[k, s, p] = Phi_k(xi_p, s) with
    s = 0 for sigma_z up and s = 1 for down.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    xi: np.ndarray
    psi: np.ndarray
    components: np.ndarray


def build_bo_matrix(
    params: ModelParams,
    branch: Branch,
    basis: FockBasisSpec,
    rule: QuadratureRule,
) -> SymmetricMatrix:
    check_order(basis, rule)
    epsilon = potential_matrix(
        lambda xi: adiabatic_energy(params, branch, xi), basis, rule
    ).entries
    ladder = np.diag(np.arange(basis.n_max) + 0.5)
    return SymmetricMatrix.from_array(epsilon + ladder)


def _solve_blocks(matrix: np.ndarray, n_levels: int):
    """
    Solve the even-n and odd-n sub-matrices separately and merge them. Even
    states precede odd ones on exact ties.
    """
    n = matrix.shape[0]
    values, vectors = [], []
    for indices in (np.arange(0, n, 2), np.arange(1, n, 2)):
        if indices.size == 0:
            continue
        block = SymmetricMatrix.from_array(matrix[np.ix_(indices, indices)])
        solved = eigh(block, n_lowest=min(n_levels, indices.size))
        padded = np.zeros((n, len(solved)))
        padded[indices, :] = solved.vectors
        values.append(solved.values)
        vectors.append(padded)
    values = np.concatenate(values)
    vectors = np.concatenate(vectors, axis=1)
    order = np.argsort(values, kind="stable")[:n_levels]
    return values[order], vectors[:, order]


def _solve_full(matrix: np.ndarray, n_levels: int):
    n = matrix.shape[0]
    # One extra level so a degenerate partner of the last state is resolved too.
    solved = eigh(SymmetricMatrix.from_array(matrix), n_lowest=min(n_levels + 1, n))
    parity = np.diag(np.where(np.arange(n) % 2 == 0, 1.0, -1.0))
    solved = resolve_degenerate(solved, parity)
    return solved.values[:n_levels], solved.vectors[:, :n_levels]


def solve_bo(
    params: ModelParams,
    branch: Branch = Branch.MINUS,
    n_max: int | None = None,
    n_levels: int | None = None,
    quad_order: int | None = None,
    method: Literal["blocks", "full"] = "blocks",
) -> BOSpectrum:
    """
    K lowest eigenpairs of the branch matrix in an N-state Fock basis.

    Defaults: N from the application configuration, K = 10 (capped at N),
    quadrature order max(201, 2N+1). `method="full"` diagonalizes the whole
    matrix instead of its two Fock-parity blocks.
    """
    n_max = n_max if n_max is not None else app_configuration["default_n_max"]
    if n_levels is None:
        n_levels = min(app_configuration["default_n_levels"], n_max)
    if not 1 <= n_levels <= n_max:
        raise ValueError(f"n_levels={n_levels} must lie in 1..N={n_max}.")
    quad_order = quad_order if quad_order is not None else default_quad_order(n_max)

    with ExceptionContext(
        f"solve_bo delta={params.delta:g} g={params.g:g} branch={branch.value} N={n_max}"
    ):
        basis = FockBasisSpec(n_max=n_max)
        rule = gauss_hermite_rule(quad_order)
        matrix = build_bo_matrix(params, branch, basis, rule).entries
        if method == "blocks":
            energies, vectors = _solve_blocks(matrix, n_levels)
        elif method == "full":
            energies, vectors = _solve_full(matrix, n_levels)
        else:
            raise ValueError(f"Unknown method '{method}'.")

    coeffs = fix_signs(vectors).T.copy()
    energies = np.array(energies)
    for a in (coeffs, energies):
        a.setflags(write=False)
    logger.debug("solve_bo N=%d K=%d E0=%.12g", n_max, n_levels, energies[0])

    return BOSpectrum(
        params=params,
        branch=branch,
        n_max=n_max,
        quad_order=quad_order,
        energies=energies,
        coeffs=coeffs,
        fock_parity=tuple(fock_parity_of(c) for c in coeffs),
    )


def _check_grid(xi_grid) -> np.ndarray:
    xi = np.asarray(xi_grid, dtype=float)
    if xi.ndim != 1 or xi.size < 2 or np.any(np.diff(xi) <= 0):
        raise ValueError("Position grid must be one-dimensional and strictly increasing.")
    return xi


def wavefunctions_on_grid(spectrum: BOSpectrum, xi_grid) -> WavefunctionGrid:
    xi = _check_grid(xi_grid)
    table = hermite_functions(spectrum.n_max, xi)
    psi = spectrum.coeffs @ table
    phi = adiabatic_eigenvector(spectrum.params, spectrum.branch, xi)
    components = psi[:, np.newaxis, :] * phi[np.newaxis, :, :]
    return WavefunctionGrid(xi=xi, psi=psi, components=components)
