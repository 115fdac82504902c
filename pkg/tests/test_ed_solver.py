import numpy as np
import pytest

from rabibo.ed_solver import (
    build_ed_matrix,
    ed_components_on_grid,
    parity_expectations,
    parity_operator,
    photon_number_ed,
    solve_ed,
)
from rabibo.model import ModelParams, RabiParams
from rabibo.quadrature import FockBasisSpec, hermite_function

STRONG = ModelParams.from_g_over_gc(10.0, 1.5)


@pytest.fixture(scope="module")
def strong_spectrum():
    return solve_ed(STRONG, n_max=200)


class TestMatrix:
    def test_single_fock_state(self):
        h = build_ed_matrix(RabiParams(delta=10.0, g=1.0), FockBasisSpec(n_max=1)).entries
        np.testing.assert_array_equal(h, [[0.5, 5.0], [5.0, 0.5]])

    def test_coupling_elements(self):
        h = build_ed_matrix(RabiParams(delta=2.0, g=0.5), FockBasisSpec(n_max=3)).entries
        # <n+1, up|H|n, up> = g sqrt(n+1), the down component has the opposite sign.
        assert h[2, 0] == pytest.approx(0.5)
        assert h[3, 1] == pytest.approx(-0.5)
        assert h[4, 2] == pytest.approx(0.5 * np.sqrt(2))
        assert h[2, 1] == 0.0

    def test_parity_commutes_with_hamiltonian(self):
        basis = FockBasisSpec(n_max=30)
        h = build_ed_matrix(STRONG, basis).entries
        pi = parity_operator(basis)
        np.testing.assert_allclose(h @ pi - pi @ h, 0.0, atol=1e-12)
        np.testing.assert_array_equal(pi @ pi, np.eye(60))


class TestSolveED:
    def test_uncoupled_spectrum(self):
        spectrum = solve_ed(RabiParams(delta=10.0, g=0.0), n_max=30)
        np.testing.assert_allclose(spectrum.energies, np.arange(10) + 0.5 - 5.0, atol=1e-12)
        assert spectrum.parity[0] == -1

    def test_degenerate_qubit_limit(self):
        """delta = 0: two displaced oscillators, E = k + 1/2 - g^2, each twice."""
        spectrum = solve_ed(RabiParams(delta=0.0, g=1.0), n_max=60, n_levels=12)
        expected = np.repeat(np.arange(6) - 0.5, 2)
        np.testing.assert_allclose(spectrum.energies, expected, atol=1e-9)
        assert sorted(spectrum.parity[:2]) == [-1, 1]

    @pytest.mark.parametrize("ratio", [1.0, 1.5])
    def test_ground_energy_non_increasing_in_basis_size(self, ratio):
        params = ModelParams.from_g_over_gc(10.0, ratio)
        energies = [solve_ed(params, n_max=n, n_levels=1).energies[0] for n in (25, 50, 100, 200)]
        assert np.all(np.diff(energies) <= 1e-12)

    def test_parity_eigenstates(self, strong_spectrum):
        np.testing.assert_allclose(np.abs(parity_expectations(strong_spectrum)), 1.0, atol=1e-8)
        assert strong_spectrum.parity[0] == -1

    def test_degenerate_levels_resolved_into_parity_states(self):
        spectrum = solve_ed(RabiParams(delta=0.0, g=1.0), n_max=60, n_levels=6)
        np.testing.assert_allclose(np.abs(parity_expectations(spectrum)), 1.0, atol=1e-8)

    @pytest.mark.parametrize("ratio", [0.0, 0.5, 1.0, 1.5])
    def test_ground_state_parity(self, ratio):
        spectrum = solve_ed(ModelParams.from_g_over_gc(10.0, ratio), n_max=100, n_levels=2)
        assert spectrum.parity[0] == -1

    def test_parity_method_matches_full(self):
        full = solve_ed(STRONG, n_max=100, method="full")
        blocks = solve_ed(STRONG, n_max=100, method="parity")
        np.testing.assert_allclose(blocks.energies, full.energies, atol=1e-10)
        assert blocks.parity == full.parity
        np.testing.assert_allclose(np.abs(parity_expectations(blocks)), 1.0, atol=1e-12)

    def test_normalized(self, strong_spectrum):
        norms = np.sum(strong_spectrum.states**2, axis=(1, 2))
        np.testing.assert_allclose(norms, 1.0, atol=1e-12)

    def test_converged_in_basis_size(self, strong_spectrum):
        larger = solve_ed(STRONG, n_max=250)
        np.testing.assert_allclose(larger.energies, strong_spectrum.energies, atol=1e-10)

    def test_bad_levels(self):
        with pytest.raises(ValueError):
            solve_ed(STRONG, n_max=3, n_levels=7)
        assert len(solve_ed(STRONG, n_max=3, n_levels=6)) == 6

    def test_unknown_method(self):
        with pytest.raises(ValueError):
            solve_ed(STRONG, n_max=10, method="lanczos")


class TestPhotonNumber:
    def test_uncoupled_vacuum(self):
        spectrum = solve_ed(RabiParams(delta=10.0, g=0.0), n_max=30)
        assert photon_number_ed(spectrum) == pytest.approx(0.0, abs=1e-14)

    def test_normal_phase_nearly_empty(self):
        spectrum = solve_ed(ModelParams.from_g_over_gc(10.0, 0.5), n_max=100)
        assert photon_number_ed(spectrum) < 0.1

    def test_superradiant_phase(self, strong_spectrum):
        assert photon_number_ed(strong_spectrum) == pytest.approx(7.6, rel=0.15)

    def test_excited_state(self, strong_spectrum):
        assert photon_number_ed(strong_spectrum, 2) > photon_number_ed(strong_spectrum, 0)

    def test_bad_index(self, strong_spectrum):
        with pytest.raises(IndexError):
            photon_number_ed(strong_spectrum, 10)
        with pytest.raises(IndexError):
            photon_number_ed(strong_spectrum, -1)


class TestComponentsOnGrid:
    def test_uncoupled_ground_state(self):
        spectrum = solve_ed(RabiParams(delta=10.0, g=0.0), n_max=10)
        xi = np.linspace(-4, 4, 81)
        components = ed_components_on_grid(spectrum, xi)
        assert components.shape == (10, 2, 81)
        # (|up> - |down>)/sqrt(2) times the oscillator ground state, sign-fixed.
        h0 = hermite_function(0, xi) / np.sqrt(2)
        np.testing.assert_allclose(np.abs(components[0, 0]), h0, atol=1e-12)
        np.testing.assert_allclose(components[0, 0], -components[0, 1], atol=1e-12)
