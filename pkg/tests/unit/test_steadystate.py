"""Unit tests for the Lyapunov steady state.

Tests the diffusion matrix normalization, the Lyapunov solve, the intra-cavity
entanglement built on it and the covariance comparison metric.
"""

from __future__ import annotations

import dataclasses

import numpy as np
import pytest

from optotrap import gaussian, model, steadystate
from optotrap.exceptions import InstabilityError, InvalidMatrixError, NumericalError, OptoTrapError
from optotrap.testing import random_stable_drift
from optotrap.types import CovarianceMatrix6, Partition, SystemParams, ThermalConvention

TEMPERATURE_LADDER = (0.001, 0.01, 0.1, 1.0, 10.0, 300.0)


class TestDiffusionMatrix:
    """Test suite for diffusion_matrix."""

    def test_vacuum_entries(self, nominal_params: SystemParams) -> None:
        """Test that each optical slot is 2γ_c·½."""
        d = steadystate.diffusion_matrix(nominal_params)

        np.testing.assert_allclose(np.diag(d)[2:], nominal_params.gamma_c)
        assert d[0, 0] == 0.0

    def test_classical_thermal_entry(self, nominal_params: SystemParams) -> None:
        """Test the flat 2γ_m m k_BT force entry."""
        p = nominal_params
        d = steadystate.diffusion_matrix(p, ThermalConvention.CLASSICAL)

        assert d[1, 1] == pytest.approx(2 * p.gamma_m * p.mass * p.boltzmann * p.temperature)

    def test_zero_temperature(self, zero_temperature_params: SystemParams) -> None:
        """Test that the classical force vanishes at T = 0."""
        assert steadystate.diffusion_matrix(zero_temperature_params)[1, 1] == 0.0

    def test_symmetrized_at_trap_frequency(self, zero_temperature_params: SystemParams) -> None:
        """Test that the symmetrized entry is the zero-point force at ω_eff."""
        p = zero_temperature_params
        omega_eff = model.reference_frequency(p)

        d = steadystate.diffusion_matrix(p, ThermalConvention.SYMMETRIZED)

        assert d[1, 1] == pytest.approx(p.gamma_m * p.mass * p.hbar * omega_eff)

    def test_diagonal(self, nominal_params: SystemParams) -> None:
        """Test that the inputs are uncorrelated."""
        d = steadystate.diffusion_matrix(nominal_params)

        np.testing.assert_array_equal(d, np.diag(np.diag(d)))


class TestSolveLyapunov:
    """Test suite for solve_lyapunov."""

    def test_scalar_balance(self) -> None:
        """Test K = −γI, D = 2γI gives C = I."""
        gamma = 3.7
        cov = steadystate.solve_lyapunov(-gamma * np.eye(6), 2 * gamma * np.eye(6))

        np.testing.assert_allclose(cov.matrix, np.eye(6), atol=1e-14)
        assert cov.method == "lyapunov"

    def test_random_stable_residuals(self, rng: np.random.Generator) -> None:
        """Test the residual bound on random stable drift matrices."""
        for _ in range(100):
            k = 1.0e3 * random_stable_drift(rng)
            b = rng.normal(size=(6, 6))

            cov = steadystate.solve_lyapunov(k, b @ b.T)

            assert cov.residual <= 1e-10
            np.testing.assert_array_equal(cov.matrix, cov.matrix.T)

    def test_rejects_unstable(self) -> None:
        """Test that an unstable drift has no steady state."""
        with pytest.raises(InstabilityError, match="No steady state"):
            steadystate.solve_lyapunov(np.diag([1.0, -1.0]), np.eye(2))

    def test_rejects_non_square_drift(self) -> None:
        """Test that a malformed bare drift raises the library's own error."""
        with pytest.raises(InvalidMatrixError, match="square"):
            steadystate.solve_lyapunov(np.ones((2, 3)), np.eye(2))

        with pytest.raises(OptoTrapError):
            steadystate.solve_lyapunov(np.ones(3), np.eye(3))

    def test_rejects_excess_residual(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test that a solve missing the residual tolerance is reported, not returned."""

        def sloppy(*_: object) -> np.ndarray:
            return 1.01 * np.eye(6)

        monkeypatch.setattr(steadystate, "solve_continuous_lyapunov", sloppy)

        with pytest.raises(NumericalError, match="residual"):
            steadystate.solve_lyapunov(-np.eye(6), 2 * np.eye(6))

    def test_rejects_bad_diffusion_shape(self) -> None:
        """Test that D must match K."""
        with pytest.raises(InvalidMatrixError, match="6x6"):
            steadystate.solve_lyapunov(-np.eye(6), np.eye(4))

    def test_rejects_asymmetric_diffusion(self) -> None:
        """Test that D must be symmetric."""
        d = np.eye(6)
        d[0, 1] = 1.0

        with pytest.raises(InvalidMatrixError, match="symmetric"):
            steadystate.solve_lyapunov(-np.eye(6), d)


class TestSteadyStateCovariance:
    """Test suite for steady_state_covariance."""

    def test_equipartition(self, decoupled_params: SystemParams) -> None:
        """Test q and p variances of the bare pendulum at 300 K."""
        p = decoupled_params
        kt = p.boltzmann * p.temperature

        c = steadystate.steady_state_covariance(p).matrix

        assert c[0, 0] == pytest.approx(kt / (p.mass * p.omega_m**2), rel=1e-6)
        assert c[1, 1] == pytest.approx(p.mass * kt, rel=1e-6)

    def test_empty_cavity_is_vacuum(self, decoupled_params: SystemParams) -> None:
        """Test that an undriven cavity relaxes to the vacuum."""
        c = steadystate.steady_state_covariance(decoupled_params).matrix

        np.testing.assert_allclose(c[2:, 2:], 0.5 * np.eye(4), atol=1e-10)

    def test_metadata(self, nominal_params: SystemParams) -> None:
        """Test that the covariance carries its canonicalization data."""
        cov = steadystate.steady_state_covariance(nominal_params)

        assert cov.mass == nominal_params.mass
        assert cov.hbar == nominal_params.hbar
        assert cov.omega_ref == pytest.approx(model.reference_frequency(nominal_params))

    @pytest.mark.parametrize("temperature", TEMPERATURE_LADDER)
    def test_nominal_is_physical(self, nominal_params: SystemParams, temperature: float) -> None:
        """Test the residual, positivity and physical reductions of the nominal trap."""
        params = dataclasses.replace(nominal_params, temperature=temperature)
        cov = steadystate.steady_state_covariance(params)
        s = model.drift_matrix(params).coordinate_scale
        balanced = cov.matrix / np.outer(s, s)

        assert cov.residual <= 1e-10
        assert np.linalg.eigvalsh(balanced)[0] >= -1e-9 * np.max(np.diag(balanced))
        for partition in Partition:
            assert gaussian.is_physical(gaussian.reduce_bipartition(cov, partition))

    def test_unstable_rejected(self, unstable_params: SystemParams) -> None:
        """Test that unstable traps have no steady state."""
        with pytest.raises(InstabilityError):
            steadystate.steady_state_covariance(unstable_params)


class TestIntracavityEntanglement:
    """Test suite for intracavity_entanglement."""

    @pytest.mark.parametrize("partition", list(Partition))
    def test_decoupled_is_separable(self, decoupled_params: SystemParams, partition: Partition) -> None:
        """Test that without drives nothing is entangled."""
        assert steadystate.intracavity_entanglement(decoupled_params, partition) == 0.0

    def test_mirror_carrier_non_increasing(self, nominal_params: SystemParams) -> None:
        """Test that mirror–carrier entanglement does not grow with temperature."""
        values = [
            steadystate.intracavity_entanglement(dataclasses.replace(nominal_params, temperature=t))
            for t in TEMPERATURE_LADDER
        ]

        assert all(value >= 0 for value in values)
        assert all(later <= earlier + 1e-12 for earlier, later in zip(values, values[1:]))

    def test_normalization_invariance(self, nominal_params: SystemParams) -> None:
        """Test that the mirror normalization frequency does not change E_N."""
        params = dataclasses.replace(nominal_params, temperature=0.001)
        omega = model.reference_frequency(params)

        reference = steadystate.intracavity_entanglement(params, Partition.MIRROR_CARRIER, omega_norm=omega)
        scaled = steadystate.intracavity_entanglement(params, Partition.MIRROR_CARRIER, omega_norm=10 * omega)

        assert scaled == pytest.approx(reference, abs=1e-8)


class TestCovarianceDeviation:
    """Test suite for covariance_deviation."""

    def test_identical(self, nominal_params: SystemParams) -> None:
        """Test that a covariance does not deviate from itself."""
        cov = steadystate.steady_state_covariance(nominal_params)

        assert steadystate.covariance_deviation(cov, cov) == 0.0

    def test_scale_invariant(self) -> None:
        """Test that the metric is normalized by the diagonal."""
        a = np.diag([1.0e-30, 4.0, 1.0, 1.0, 1.0, 1.0])
        b = a.copy()
        b[0, 0] *= 1.01

        assert steadystate.covariance_deviation(a, b) == pytest.approx(0.01)

    def test_off_diagonal(self) -> None:
        """Test off-diagonal deviations against √(a_ii a_jj)."""
        a = np.diag([4.0, 1.0, 1.0, 1.0, 1.0, 1.0])
        b = a.copy()
        b[0, 1] = b[1, 0] = 0.1

        assert steadystate.covariance_deviation(CovarianceMatrix6(matrix=a), b) == pytest.approx(0.05)

    def test_zero_norm_element(self) -> None:
        """Test that a difference on a zero-variance row is infinite."""
        a = np.zeros((6, 6))
        b = a.copy()
        b[0, 0] = 1.0

        assert steadystate.covariance_deviation(a, b) == float("inf")

    def test_shape_mismatch(self) -> None:
        """Test that covariances of different size are rejected."""
        with pytest.raises(InvalidMatrixError):
            steadystate.covariance_deviation(np.eye(6), np.eye(4))
