import numpy as np
from pydantic import ValidationError
import pytest

from rabibo.eigen import SymmetricMatrix, eigh, fix_signs, resolve_degenerate


def random_symmetric(n, seed=7):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n))
    return 0.5 * (a + a.T)


class TestSymmetricMatrix:
    def test_symmetrizes_input(self):
        matrix = SymmetricMatrix.from_array([[1.0, 2.0], [4.0, 3.0]])
        np.testing.assert_array_equal(matrix.entries, [[1.0, 3.0], [3.0, 3.0]])
        np.testing.assert_array_equal(matrix.entries, matrix.entries.T)

    def test_rejects_non_square(self):
        with pytest.raises(ValidationError):
            SymmetricMatrix.from_array(np.zeros((2, 3)))
        with pytest.raises(ValidationError):
            SymmetricMatrix.from_array(np.zeros(4))

    def test_rejects_empty(self):
        with pytest.raises(ValidationError):
            SymmetricMatrix.from_array(np.zeros((0, 0)))

    def test_entries_read_only(self):
        matrix = SymmetricMatrix.from_array(np.eye(3))
        with pytest.raises(ValueError):
            matrix.entries[0, 0] = 2.0


class TestEigh:
    def test_diagonal(self):
        result = eigh(SymmetricMatrix.from_array(np.diag([3.0, 1.0, 2.0])))
        np.testing.assert_array_equal(result.values, [1.0, 2.0, 3.0])
        np.testing.assert_allclose(np.abs(result.vectors), [[0, 0, 1], [1, 0, 0], [0, 1, 0]])

    def test_pauli_x(self):
        result = eigh(SymmetricMatrix.from_array([[0.0, 1.0], [1.0, 0.0]]))
        np.testing.assert_allclose(result.values, [-1.0, 1.0], atol=1e-15)
        s = 1 / np.sqrt(2)
        # Largest component made positive; ties go to the lowest index.
        np.testing.assert_allclose(result.vectors[:, 0], [s, -s], atol=1e-15)
        np.testing.assert_allclose(result.vectors[:, 1], [s, s], atol=1e-15)

    def test_random_matrix_reconstruction(self):
        a = random_symmetric(50)
        result = eigh(SymmetricMatrix.from_array(a))
        v, lam = result.vectors, result.values
        assert np.all(np.diff(lam) >= 0)
        np.testing.assert_allclose(v @ np.diag(lam) @ v.T, a, atol=1e-12)
        assert np.max(np.abs(a @ v - v * lam)) < 1e-12
        assert np.max(np.abs(v.T @ v - np.eye(50))) < 1e-12

    def test_trace_preserved(self):
        a = random_symmetric(60, seed=13)
        result = eigh(SymmetricMatrix.from_array(a))
        assert np.sum(result.values) == pytest.approx(np.trace(a), abs=1e-11)

    def test_shift_moves_every_eigenvalue(self):
        a = random_symmetric(40, seed=17)
        plain = eigh(SymmetricMatrix.from_array(a))
        shifted = eigh(SymmetricMatrix.from_array(a + 2.5 * np.eye(40)))
        np.testing.assert_allclose(shifted.values, plain.values + 2.5, atol=1e-12)

    def test_lowest_subset_matches_full(self):
        a = random_symmetric(40, seed=3)
        full = eigh(SymmetricMatrix.from_array(a))
        lowest = eigh(SymmetricMatrix.from_array(a), n_lowest=5)
        assert len(lowest) == 5
        np.testing.assert_allclose(lowest.values, full.values[:5], atol=1e-12)
        np.testing.assert_allclose(lowest.vectors, full.vectors[:, :5], atol=1e-10)

    def test_one_by_one(self):
        result = eigh(SymmetricMatrix.from_array([[2.5]]))
        assert result.values.tolist() == [2.5]
        assert result.vectors.tolist() == [[1.0]]

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            eigh(SymmetricMatrix.from_array([[1.0, np.nan], [np.nan, 1.0]]))

    @pytest.mark.parametrize("n_lowest", [0, 4])
    def test_n_lowest_out_of_range(self, n_lowest):
        with pytest.raises(ValueError):
            eigh(SymmetricMatrix.from_array(np.eye(3)), n_lowest=n_lowest)

    def test_deterministic(self):
        a = random_symmetric(30, seed=11)
        first = eigh(SymmetricMatrix.from_array(a))
        second = eigh(SymmetricMatrix.from_array(a))
        np.testing.assert_array_equal(first.values, second.values)
        np.testing.assert_array_equal(first.vectors, second.vectors)


class TestFixSigns:
    def test_flips_negative_peaks(self):
        vectors = np.array([[0.1, -0.2], [-0.9, 0.8]])
        fixed = fix_signs(vectors)
        np.testing.assert_array_equal(fixed, [[-0.1, -0.2], [0.9, 0.8]])

    def test_tie_goes_to_lowest_index(self):
        vectors = np.array([[-0.5], [0.5]])
        np.testing.assert_array_equal(fix_signs(vectors), [[0.5], [-0.5]])

    def test_does_not_modify_input(self):
        vectors = np.array([[-1.0]])
        fix_signs(vectors)
        assert vectors[0, 0] == -1.0


class TestResolveDegenerate:
    def test_rotates_into_operator_eigenbasis(self):
        """
        A 2x2 degenerate block given in a rotated basis comes back aligned
        with a commuting diagonal operator.
        """
        h = np.diag([1.0, 1.0, 5.0])
        decomposition = eigh(SymmetricMatrix.from_array(h))
        c, s = np.cos(0.3), np.sin(0.3)
        rotated = np.array(decomposition.vectors)
        rotated[:, :2] = rotated[:, :2] @ np.array([[c, -s], [s, c]])
        decomposition = type(decomposition)(values=decomposition.values, vectors=rotated)

        operator = np.diag([1.0, -1.0, 1.0])
        resolved = resolve_degenerate(decomposition, operator)
        expectations = np.einsum("ik,ij,jk->k", resolved.vectors, operator, resolved.vectors)
        np.testing.assert_allclose(expectations, [-1.0, 1.0, 1.0], atol=1e-12)
        np.testing.assert_allclose(np.abs(resolved.vectors[:, 0]), [0.0, 1.0, 0.0], atol=1e-12)

    def test_non_degenerate_untouched(self):
        a = random_symmetric(10, seed=5)
        decomposition = eigh(SymmetricMatrix.from_array(a))
        resolved = resolve_degenerate(decomposition, np.eye(10))
        np.testing.assert_array_equal(resolved.vectors, decomposition.vectors)
