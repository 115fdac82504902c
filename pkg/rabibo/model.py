"""
Closed-form quantities of the adiabatically diagonalized two-level sector.

At fixed oscillator position xi the two-level block of the Rabi Hamiltonian is
the 2x2 matrix built by `sigma_hamiltonian()`. Its eigenvalues are the
adiabatic surfaces eps_minus(xi) <= 0 <= eps_plus(xi), and the slow variable
moves in the effective potential V(xi) = xi^2/2 + eps(xi).

All energies are in units of the mode quantum. Every function here is pure and
accepts either a scalar or a numpy array for `xi`.
"""

from enum import Enum
import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class Branch(str, Enum):
    MINUS = "minus"
    PLUS = "plus"

    @property
    def sign(self) -> int:
        return -1 if self is Branch.MINUS else 1


class RabiParams(BaseModel):
    """
    Raw Hamiltonian parameters. Delta may be zero here; the exact
    diagonalization reference accepts it.
    """

    model_config = ConfigDict(frozen=True)

    delta: float = Field(..., ge=0, allow_inf_nan=False, description="Two-level splitting")
    g: float = Field(..., ge=0, allow_inf_nan=False, description="Coupling strength")


class ModelParams(RabiParams):
    """
    Parameters of the adiabatic (Born-Oppenheimer) treatment. Delta must be
    strictly positive because beta = 2*sqrt(2)*g/delta.
    """

    delta: float = Field(..., gt=0, allow_inf_nan=False, description="Two-level splitting")

    @classmethod
    def from_g_over_gc(cls, delta: float, ratio: float) -> "ModelParams":
        return cls(delta=delta, g=ratio * critical_coupling(delta))

    @property
    def beta(self) -> float:
        return 2.0 * math.sqrt(2.0) * self.g / self.delta

    @property
    def critical_coupling(self) -> float:
        return critical_coupling(self)

    @property
    def g_over_gc(self) -> float:
        return self.g / critical_coupling(self)


def critical_coupling(params: RabiParams | float) -> float:
    """
    g_c = sqrt(1 + sqrt(1 + delta^2/16)). Delta = 0 gives the limit sqrt(2).
    """
    delta = params.delta if isinstance(params, RabiParams) else float(params)
    return math.sqrt(1.0 + math.sqrt(1.0 + delta * delta / 16.0))


def sigma_hamiltonian(params: ModelParams, xi: float) -> np.ndarray:
    coupling = 2.0 * math.sqrt(2.0) * params.g * xi
    return 0.5 * np.array(
        [[coupling, params.delta], [params.delta, -coupling]], dtype=float
    )


def adiabatic_energy(params: ModelParams, branch: Branch, xi):
    beta_xi = params.beta * np.asarray(xi, dtype=float)
    return branch.sign * 0.5 * params.delta * np.hypot(1.0, beta_xi)


def mixing_angle_gamma(params: ModelParams, xi):
    beta_xi = params.beta * np.asarray(xi, dtype=float)
    return beta_xi / np.hypot(1.0, beta_xi)


def _one_plus_minus_gamma(params: ModelParams, xi):
    # 1 - |gamma| = 1/(r(r + |b|)) avoids cancellation for large |beta*xi|.
    b = params.beta * np.asarray(xi, dtype=float)
    r = np.hypot(1.0, b)
    a = np.abs(b)
    small = 1.0 / (r * (r + a))
    large = 1.0 + a / r
    one_plus = np.where(b >= 0, large, small)
    one_minus = np.where(b >= 0, small, large)
    return one_plus, one_minus


def adiabatic_eigenvector(params: ModelParams, branch: Branch, xi) -> np.ndarray:
    """
    Unit eigenvector of sigma_hamiltonian() in the sigma_z basis (up, down).
    Returns shape (2,) for scalar xi and (2, len(xi)) for arrays.
    """
    one_plus, one_minus = _one_plus_minus_gamma(params, xi)
    if branch is Branch.PLUS:
        up = np.sqrt(0.5 * one_plus)
        down = np.sqrt(0.5 * one_minus)
    else:
        up = -np.sqrt(0.5 * one_minus)
        down = np.sqrt(0.5 * one_plus)
    return np.stack([up, down])


def effective_potential(params: ModelParams, branch: Branch, xi):
    xi = np.asarray(xi, dtype=float)
    return 0.5 * xi * xi + adiabatic_energy(params, branch, xi)


def effective_force(params: ModelParams, branch: Branch, xi):
    """First derivative V'(xi)."""
    xi = np.asarray(xi, dtype=float)
    beta = params.beta
    return xi + branch.sign * 0.5 * params.delta * beta * beta * xi / np.hypot(
        1.0, beta * xi
    )


def effective_curvature(params: ModelParams, branch: Branch, xi):
    """Second derivative V''(xi)."""
    xi = np.asarray(xi, dtype=float)
    beta = params.beta
    return 1.0 + branch.sign * 0.5 * params.delta * beta * beta / np.hypot(
        1.0, beta * xi
    ) ** 3


def quartic_expansion(params: ModelParams) -> tuple[float, float, float]:
    """
    Coefficients (c0, c2, c4) of V_minus(xi) ~ c0 + c2 xi^2 + c4 xi^4, the
    Landau form of the lower effective potential.
    """
    beta2 = params.beta**2
    c0 = -0.5 * params.delta
    c2 = 0.5 - 0.25 * beta2 * params.delta
    c4 = beta2 * beta2 * params.delta / 16.0
    return c0, c2, c4


def double_well_strength(params: ModelParams) -> float:
    """delta * beta^2 / 2 = 4 g^2 / delta; above 1 xi=0 is a local maximum."""
    return 0.5 * params.delta * params.beta**2


def is_double_well(params: ModelParams) -> bool:
    return double_well_strength(params) > 1.0


def landau_double_well(params: ModelParams) -> bool:
    """Double-well diagnostic from the sign of the quartic expansion's c2."""
    return quartic_expansion(params)[1] < 0.0


def potential_minima(params: ModelParams) -> list[float]:
    """
    Minimizers of V_minus. A single well at 0, or the symmetric pair
    +-sqrt(((delta beta^2/2)^2 - 1)/beta^2) once the double well forms.
    """
    strength = double_well_strength(params)
    if strength <= 1.0:
        return [0.0]
    xi_star = math.sqrt((strength * strength - 1.0) / params.beta**2)
    return [-xi_star, xi_star]
