"""
Gauss-Hermite quadrature and normalized oscillator eigenfunctions.

Fock-basis matrix elements <n|f|m> = int h_n(xi) f(xi) h_m(xi) dxi are
assembled as sum_q lambda_q h_n(xi_q) f(xi_q) h_m(xi_q), where
lambda_q = w_q exp(+xi_q^2) is the weight with the Gaussian absorbed. Both
lambda_q and h_n are computed without ever forming exp(+xi^2), n! or 2^n.
"""

from functools import lru_cache
import math
from typing import Callable

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .eigen import SymmetricMatrix, eigh
from .exceptions import QuadratureOrderError

# Scaled recurrence values are renormalized once they exceed this magnitude.
_RESCALE_THRESHOLD = 1e100
_LOG_PI_QUARTER = 0.25 * math.log(math.pi)


class FockBasisSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_max: int = Field(..., ge=1, description="Truncation size N; indices 0..N-1")


class QuadratureRule(BaseModel):
    """
    Gauss-Hermite rule for the weight exp(-xi^2). `weights` may underflow to
    zero for the outermost nodes of very high orders; `absorbed_weights`
    (w_q * exp(xi_q^2)) never do and are what matrix assembly uses.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    nodes: np.ndarray
    weights: np.ndarray
    absorbed_weights: np.ndarray

    @property
    def order(self) -> int:
        return self.nodes.shape[0]


def hermite_functions(count: int, xi) -> np.ndarray:
    """
    Values of h_0..h_{count-1} at xi; result has shape (count,) + shape(xi).

    Uses the normalized three-term recurrence
        h_{k+1} = sqrt(2/(k+1)) xi h_k - sqrt(k/(k+1)) h_{k-1}
    on rescaled values, tracking the Gaussian factor and any renormalization in
    a per-point log scale so nothing overflows for large k or |xi|.
    """
    if count < 1:
        raise ValueError(f"count must be at least 1, got {count}.")
    xi = np.asarray(xi, dtype=float)
    x = xi.ravel()
    out = np.empty((count, x.size))

    log_scale = -0.5 * x * x - _LOG_PI_QUARTER
    previous = np.zeros_like(x)
    current = np.ones_like(x)
    out[0] = np.exp(log_scale)
    for k in range(count - 1):
        following = math.sqrt(2.0 / (k + 1)) * x * current - math.sqrt(k / (k + 1)) * previous
        previous, current = current, following
        big = np.abs(current) > _RESCALE_THRESHOLD
        if np.any(big):
            factor = np.abs(current[big])
            current[big] /= factor
            previous[big] /= factor
            log_scale[big] += np.log(factor)
        out[k + 1] = current * np.exp(log_scale)
    return out.reshape((count,) + xi.shape)


def hermite_function(n: int, xi):
    """Orthonormal oscillator eigenfunction h_n(xi)."""
    if n < 0:
        raise ValueError(f"Hermite function index must be non-negative, got {n}.")
    return hermite_functions(n + 1, xi)[n]


@lru_cache(maxsize=16)
def gauss_hermite_rule(order: int) -> QuadratureRule:
    """
    Nodes from the Golub-Welsch Jacobi matrix (zero diagonal, off-diagonals
    sqrt(k/2)). Weights from the Christoffel function of the same recurrence,
    lambda_q = 1 / sum_{k<Q} h_k(xi_q)^2, which keeps full relative accuracy
    in the tails.
    """
    if order < 1:
        raise QuadratureOrderError(f"Quadrature order must be at least 1, got {order}.")

    off_diagonal = np.sqrt(np.arange(1, order) / 2.0)
    jacobi = np.diag(off_diagonal, 1) + np.diag(off_diagonal, -1)
    values = eigh(SymmetricMatrix.from_array(jacobi)).values
    nodes = 0.5 * (values - values[::-1])

    table = hermite_functions(order, nodes)
    absorbed = 1.0 / np.sum(table * table, axis=0)
    weights = absorbed * np.exp(-nodes * nodes)

    for a in (nodes, weights, absorbed):
        a.setflags(write=False)
    return QuadratureRule(nodes=nodes, weights=weights, absorbed_weights=absorbed)


def check_order(basis: FockBasisSpec, rule: QuadratureRule) -> None:
    required = 2 * basis.n_max + 1
    if rule.order < required:
        raise QuadratureOrderError(
            f"Quadrature order {rule.order} too low for N={basis.n_max}; need at least {required}."
        )


def quadrature_matrix(
    values: np.ndarray, basis: FockBasisSpec, rule: QuadratureRule
) -> np.ndarray:
    """<n|f|m> for n, m < N given f sampled at the rule's nodes."""
    table = hermite_functions(basis.n_max, rule.nodes)
    weighted = table * (rule.absorbed_weights * values)
    return weighted @ table.T


def potential_matrix(
    f: Callable[[np.ndarray], np.ndarray],
    basis: FockBasisSpec,
    rule: QuadratureRule,
) -> SymmetricMatrix:
    """
    Fock-basis matrix of a real potential f. For even f the entries with
    n + m odd vanish to rounding.
    """
    check_order(basis, rule)
    values = np.broadcast_to(np.asarray(f(rule.nodes), dtype=float), rule.nodes.shape)
    return SymmetricMatrix.from_array(quadrature_matrix(values, basis, rule))
