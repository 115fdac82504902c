"""
Dense real-symmetric eigendecomposition shared by both diagonalization stages
and the quadrature node computation.
"""

import logging

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator
import scipy.linalg

from .exceptions import EigenSolverError

logger = logging.getLogger(__name__)

# Components within this relative distance of the largest magnitude count as
# tied for the sign convention.
SIGN_TIE_TOLERANCE = 1e-9


def _read_only(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class SymmetricMatrix(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    entries: np.ndarray

    @field_validator("entries", mode="before")
    @classmethod
    def symmetrize(cls, value):
        a = np.array(value, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"Expected a square matrix, got shape {a.shape}.")
        if a.shape[0] < 1:
            raise ValueError("Matrix dimension must be at least 1.")
        # (a_ij + a_ji)/2 is bitwise symmetric since IEEE addition commutes.
        return _read_only(0.5 * (a + a.T))

    @classmethod
    def from_array(cls, a) -> "SymmetricMatrix":
        return cls(entries=a)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


class EigenDecomposition(BaseModel):
    """Ascending eigenvalues and orthonormal column eigenvectors."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: np.ndarray
    vectors: np.ndarray

    def __len__(self):
        return self.values.shape[0]


def fix_signs(vectors: np.ndarray) -> np.ndarray:
    """
    Make the largest-magnitude component of every column positive. Near-ties
    go to the lowest index.
    """
    vectors = np.array(vectors, dtype=float)
    magnitudes = np.abs(vectors)
    peaks = magnitudes.max(axis=0)
    for k in range(vectors.shape[1]):
        candidates = np.flatnonzero(magnitudes[:, k] >= peaks[k] * (1.0 - SIGN_TIE_TOLERANCE))
        if vectors[candidates[0], k] < 0:
            vectors[:, k] = -vectors[:, k]
    return vectors


def eigh(matrix: SymmetricMatrix, n_lowest: int | None = None) -> EigenDecomposition:
    """
    Eigenpairs of a symmetric matrix, ascending. With `n_lowest` only that many
    of the lowest eigenpairs are computed.
    """
    a = matrix.entries
    if not np.all(np.isfinite(a)):
        raise ValueError("Matrix has non-finite entries.")
    n = matrix.dim
    if n_lowest is not None and not 1 <= n_lowest <= n:
        raise ValueError(f"n_lowest={n_lowest} outside 1..{n}.")

    subset = None if n_lowest is None or n_lowest == n else [0, n_lowest - 1]
    try:
        values, vectors = scipy.linalg.eigh(
            a, subset_by_index=subset, check_finite=False
        )
    except (scipy.linalg.LinAlgError, ValueError) as e:
        raise EigenSolverError(f"Symmetric eigensolver failed for dim={n}: {e}") from e

    if not (np.all(np.isfinite(values)) and np.all(np.isfinite(vectors))):
        raise EigenSolverError(f"Symmetric eigensolver returned non-finite output for dim={n}.")

    logger.debug("eigh dim=%d n_lowest=%s", n, n_lowest)
    return EigenDecomposition(
        values=_read_only(np.array(values)),
        vectors=_read_only(fix_signs(vectors)),
    )


def resolve_degenerate(
    decomposition: EigenDecomposition,
    operator: np.ndarray,
    tolerance: float = 1e-9,
) -> EigenDecomposition:
    """
    Rotate eigenvectors inside clusters of (near-)degenerate eigenvalues so
    they also diagonalize `operator`, a symmetric matrix commuting with the
    decomposed one. Clusters are ordered by ascending operator eigenvalue.
    """
    values = decomposition.values
    vectors = np.array(decomposition.vectors)
    start = 0
    while start < len(values):
        stop = start + 1
        while stop < len(values) and values[stop] - values[stop - 1] < tolerance:
            stop += 1
        if stop - start > 1:
            block = vectors[:, start:stop]
            projected = block.T @ operator @ block
            _, rotation = np.linalg.eigh(0.5 * (projected + projected.T))
            vectors[:, start:stop] = block @ rotation
        start = stop
    return EigenDecomposition(
        values=values,
        vectors=_read_only(fix_signs(vectors)),
    )
