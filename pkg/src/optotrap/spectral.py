"""Frequency-domain solution of the linearized dynamics.

At sideband frequency Ω the intra-cavity coordinates follow from the raw noise
inputs n = [0, F_th, X_in1, Y_in1, X_in2, Y_in2] as u(Ω) = M(Ω)·n(Ω), with
M = (iΩ − K)⁻¹·diag(input_scaling). The output fields follow from the
input-output relation a_out = √(2γ_c)·a − a_in, and spectral variance matrices are
Re[T·S·T†] for the diagonal input spectral density S.

Spectra are one-sided (Ω > 0); S is the coefficient of δ(Ω − Ω′) in symmetrized
correlations of the Hermitianized operators, so the stationary covariance is
(1/π)∫₀^∞ Re[M·S·M†] dΩ.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import TYPE_CHECKING

import numpy as np
from scipy.integrate import quad_vec

from optotrap import gaussian, model, steadystate
from optotrap.constants import VACUUM_VARIANCE
from optotrap.exceptions import (
    ConvergenceError,
    FrequencyPointError,
    IllConditionedSolveError,
    OptoTrapError,
    ParameterValidationError,
    UnphysicalStateError,
)
from optotrap.types import (
    CovarianceMatrix6,
    DriftMatrix,
    InputSpectralDensity,
    SpectrumSeries,
    SystemParams,
    ThermalConvention,
    VarianceMatrix4,
)

if TYPE_CHECKING:
    from collections.abc import Sequence

    import numpy.typing as npt

__all__ = (
    "input_spectral_density",
    "integrate_covariance",
    "intracavity_spectral_covariance",
    "intracavity_transfer",
    "output_entanglement_spectrum",
    "output_transfer",
    "output_variance_at",
    "plateau_log_negativity",
    "solve_residual",
)

logger = logging.getLogger(__name__)

MAX_CONDITION = 1e12
OUTPUT_PHYSICAL_TOLERANCE = 1e-6
DEFAULT_CUTOFF_LINEWIDTHS = 100.0

# Raw vacuum inputs X_in1, Y_in1, X_in2, Y_in2 feed output rows 0..3.
_VACUUM_SELECTOR = np.hstack([np.zeros((4, 2)), np.eye(4)])


def _check_frequency(omega: float) -> None:
    if not (math.isfinite(omega) and omega > 0):
        raise ParameterValidationError({"omega": f"must be a positive sideband frequency, got {omega!r}"})


def _input_diagonal(p: SystemParams, omega: float, convention: ThermalConvention) -> npt.NDArray[np.float64]:
    thermal = model.thermal_force_density(p, omega, convention)
    return np.array([0.0, thermal, VACUUM_VARIANCE, VACUUM_VARIANCE, VACUUM_VARIANCE, VACUUM_VARIANCE])


def input_spectral_density(
    p: SystemParams,
    omega: float,
    convention: ThermalConvention = ThermalConvention.SYMMETRIZED,
) -> InputSpectralDensity:
    """Diagonal spectral density of the raw inputs at Ω.

    Vacuum inputs contribute ½ each and are mutually uncorrelated; the thermal
    entry follows ``convention`` (see :func:`optotrap.model.thermal_force_density`).

    Raises:
        ParameterValidationError: If Ω ≤ 0.
    """
    _check_frequency(omega)
    convention = ThermalConvention(convention)
    return InputSpectralDensity(
        omega=omega,
        matrix=np.diag(_input_diagonal(p, omega, convention)),
        convention=convention,
    )


def _canonical_transfer(drift: DriftMatrix, omega: float) -> npt.NDArray[np.complex128]:
    system = 1j * omega * np.eye(drift.size) - drift.canonical()
    condition = float(np.linalg.cond(system))
    if not math.isfinite(condition) or condition > MAX_CONDITION:
        raise IllConditionedSolveError(omega, condition)
    return np.linalg.solve(system, drift.canonical_input())


def intracavity_transfer(drift: DriftMatrix, omega: float) -> npt.NDArray[np.complex128]:
    """Transfer matrix (iΩ − K)⁻¹·diag(input_scaling) from raw inputs to coordinates.

    Args:
        drift: The drift matrix.
        omega: Sideband angular frequency (rad/s).

    Returns:
        Complex 6×6 matrix in SI mirror units.

    Raises:
        IllConditionedSolveError: If the balanced system's condition number exceeds 1e12.
    """
    return drift.coordinate_scale[:, np.newaxis] * _canonical_transfer(drift, omega)


def solve_residual(drift: DriftMatrix, omega: float, transfer: npt.ArrayLike) -> float:
    """Normwise relative residual of a transfer solve, in balanced coordinates.

    Returns ‖(iΩ − K′)X′ − B′‖ / (‖iΩ − K′‖·‖X′‖ + ‖B′‖) with primes denoting the
    balanced coordinates of ``drift``.
    """
    system = 1j * omega * np.eye(drift.size) - drift.canonical()
    x = np.asarray(transfer) / drift.coordinate_scale[:, np.newaxis]
    rhs = drift.canonical_input()
    residual = np.linalg.norm(system @ x - rhs)
    return float(residual / (np.linalg.norm(system) * np.linalg.norm(x) + np.linalg.norm(rhs)))


def _output_transfer(drift: DriftMatrix, gamma_c: float, omega: float) -> npt.NDArray[np.complex128]:
    m = intracavity_transfer(drift, omega)
    return math.sqrt(2.0 * gamma_c) * m[2:6, :] - _VACUUM_SELECTOR


def output_transfer(p: SystemParams, omega: float) -> npt.NDArray[np.complex128]:
    """Transfer matrix from raw inputs to output quadratures [X_out1, Y_out1, X_out2, Y_out2].

    Output quadratures are in the rotating frame of their own drive field; no
    homodyne rotation is applied.

    Returns:
        Complex 4×6 matrix √(2γ_c)·M[cavity rows] − (vacuum-input selector).
    """
    return _output_transfer(model.drift_matrix(p), p.gamma_c, omega)


def _output_variance(
    p: SystemParams,
    drift: DriftMatrix,
    omega: float,
    convention: ThermalConvention,
) -> VarianceMatrix4:
    t = _output_transfer(drift, p.gamma_c, omega)
    v = np.real((t * _input_diagonal(p, omega, convention)) @ t.conj().T)
    v = VarianceMatrix4(matrix=0.5 * (v + v.T))
    nu_minus, _ = gaussian.symplectic_eigenvalues(v)
    if nu_minus < 0.5 - OUTPUT_PHYSICAL_TOLERANCE:
        msg = f"Output state at omega={omega:.6g} rad/s violates the uncertainty principle (nu_minus={nu_minus:.9g})"
        raise UnphysicalStateError(msg)
    return v


def output_variance_at(
    p: SystemParams,
    omega: float,
    convention: ThermalConvention = ThermalConvention.SYMMETRIZED,
) -> VarianceMatrix4:
    """Spectral variance matrix of the two output fields at Ω.

    Args:
        p: Validated, stable parameters.
        omega: Sideband angular frequency (rad/s), > 0.
        convention: Thermal convention of the force spectrum.

    Returns:
        V(Ω) = Re[T·S·T†], symmetrized, over [X_out1, Y_out1, X_out2, Y_out2].

    Raises:
        ParameterValidationError: If Ω ≤ 0.
        InstabilityError: If the trap is unstable.
        UnphysicalStateError: If the result has ν₋ < ½ − 1e-6.
    """
    _check_frequency(omega)
    drift = model.stable_drift_matrix(p)
    return _output_variance(p, drift, omega, ThermalConvention(convention))


def _spectrum_point(
    p: SystemParams,
    drift: DriftMatrix,
    omega: float,
    convention: ThermalConvention,
) -> tuple[float, float, float, float, bool]:
    try:
        v = _output_variance(p, drift, omega, convention)
        sigma, det_v = gaussian.simon_invariants(v)
        nu_minus, _ = gaussian.symplectic_eigenvalues(v, partial_transpose=True)
        return gaussian.log_negativity(v), sigma, det_v, nu_minus, gaussian.is_physical(v)
    except (OptoTrapError, np.linalg.LinAlgError) as exc:
        raise FrequencyPointError(omega, exc) from exc


def output_entanglement_spectrum(
    p: SystemParams,
    grid: Sequence[float] | npt.ArrayLike,
    convention: ThermalConvention = ThermalConvention.SYMMETRIZED,
    *,
    workers: int = 1,
) -> SpectrumSeries:
    """Logarithmic negativity of the output fields over a frequency grid.

    Points are evaluated independently; with ``workers > 1`` they run on a thread
    pool whose results are collected in grid order, so the output does not depend
    on the worker count.

    Args:
        p: Validated, stable parameters.
        grid: Strictly ascending positive sideband frequencies (rad/s).
        convention: Thermal convention of the force spectrum.
        workers: Number of worker threads.

    Returns:
        The spectrum with Σ, det V, ν₋ (partially transposed) and physicality per point.

    Raises:
        ParameterValidationError: If the grid is not strictly ascending and positive.
        InstabilityError: If the trap is unstable.
        FrequencyPointError: If any point fails; carries that point's Ω.
    """
    omegas = np.asarray(grid, dtype=float)
    if omegas.ndim != 1 or omegas.size == 0 or np.any(omegas <= 0) or np.any(np.diff(omegas) <= 0):
        msg = "must be a non-empty, strictly ascending array of positive frequencies"
        raise ParameterValidationError({"grid": msg})
    drift = model.stable_drift_matrix(p)
    convention = ThermalConvention(convention)

    def evaluate(omega: float) -> tuple[float, float, float, float, bool]:
        return _spectrum_point(p, drift, float(omega), convention)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(evaluate, omegas))
    else:
        rows = [evaluate(omega) for omega in omegas]
    logger.debug("Evaluated output spectrum at %d points with %d worker(s)", omegas.size, workers)

    values, sigma, det_v, nu_minus, physical = zip(*rows, strict=True)
    return SpectrumSeries(
        grid=omegas,
        values=np.array(values),
        sigma=np.array(sigma),
        det_v=np.array(det_v),
        nu_minus=np.array(nu_minus),
        physical=np.array(physical, dtype=bool),
    )


def intracavity_spectral_covariance(
    p: SystemParams,
    omega: float,
    convention: ThermalConvention = ThermalConvention.SYMMETRIZED,
) -> npt.NDArray[np.float64]:
    """Symmetrized spectral density Re[M·S·M†] of the intra-cavity coordinates at Ω.

    Raises:
        ParameterValidationError: If Ω ≤ 0.
        InstabilityError: If the trap is unstable.
    """
    _check_frequency(omega)
    drift = model.stable_drift_matrix(p)
    m = intracavity_transfer(drift, omega)
    density = np.real((m * _input_diagonal(p, omega, ThermalConvention(convention))) @ m.conj().T)
    return 0.5 * (density + density.T)


def _refinement_points(p: SystemParams, drift: DriftMatrix, omega_max: float) -> list[float]:
    eigenvalues = np.linalg.eigvals(drift.canonical())
    candidates = [p.gamma_c, abs(p.detuning_1), abs(p.detuning_2)]
    for eigenvalue in eigenvalues:
        centre, width = abs(eigenvalue.imag), abs(eigenvalue.real)
        candidates.append(centre)
        for factor in (1.0, 10.0, 100.0):
            candidates.extend((centre - factor * width, centre + factor * width))
    return sorted({float(x) for x in candidates if 0 < x < omega_max})


def integrate_covariance(
    p: SystemParams,
    convention: ThermalConvention = ThermalConvention.SYMMETRIZED,
    *,
    omega_max: float | None = None,
    rtol: float = 1e-6,
    limit: int = 10_000,
    tail_correction: bool = True,
) -> CovarianceMatrix6:
    """Stationary covariance by integrating the spectral covariance over frequency.

    Computes (1/π)∫₀^Ω_max Re[M·S·M†] dΩ with adaptive Gauss–Kronrod subdivision,
    refined around the drift eigenfrequencies, γ_c and the detunings. Each element
    is measured against √(C_ii C_jj), with the white-noise steady state as the
    weight, so small and large elements meet the same relative tolerance. Beyond
    Ω_max the integrand decays as Ω⁻²; the tail Ω_max·f(Ω_max) is added unless
    ``tail_correction`` is False, in which case its size is the truncation error.

    Args:
        p: Validated, stable parameters.
        convention: Thermal convention of the force spectrum.
        omega_max: Upper cutoff (rad/s); defaults to 100·γ_c.
        rtol: Relative tolerance per element.
        limit: Maximum number of subintervals.
        tail_correction: Add the analytic tail beyond the cutoff.

    Returns:
        The covariance with ``method="spectral"`` and its error estimate.

    Raises:
        InstabilityError: If the trap is unstable.
        ConvergenceError: If the subdivision budget is exhausted.
    """
    drift = model.stable_drift_matrix(p)
    convention = ThermalConvention(convention)
    cutoff = DEFAULT_CUTOFF_LINEWIDTHS * p.gamma_c if omega_max is None else omega_max
    if not (math.isfinite(cutoff) and cutoff > 0):
        raise ParameterValidationError({"omega_max": f"must be positive, got {cutoff!r}"})

    s = drift.coordinate_scale
    white = steadystate.solve_lyapunov(drift, steadystate.diffusion_matrix(p)).matrix / np.outer(s, s)
    weight = np.maximum(np.diag(white), 0.5)
    norm = np.sqrt(np.outer(weight, weight))

    def integrand(omega: float) -> npt.NDArray[np.float64]:
        m = _canonical_transfer(drift, omega)
        density = np.real((m * _input_diagonal(p, omega, convention)) @ m.conj().T)
        return 0.5 * (density + density.T) / (math.pi * norm)

    points = _refinement_points(p, drift, cutoff)

    def integrate(budget: int) -> tuple[npt.NDArray[np.float64], float, int]:
        result, error, info = quad_vec(
            integrand,
            0.0,
            cutoff,
            epsabs=rtol,
            epsrel=rtol,
            norm="max",
            limit=budget,
            points=points,
            full_output=True,
        )
        return np.asarray(result), float(error), int(info.status)

    result, error, status = integrate(limit)
    if status != 0:
        coarse, _, _ = integrate(max(limit // 2, 1))
        deviation = np.abs(result - coarse)
        worst = np.unravel_index(int(np.argmax(deviation)), deviation.shape)
        msg = f"Frequency integration did not converge within {limit} subintervals"
        raise ConvergenceError(msg, (int(worst[0]), int(worst[1])), max(float(deviation[worst]), error))

    tail = cutoff * integrand(cutoff)
    if tail_correction:
        result = result + tail
    else:
        error += float(np.max(np.abs(tail)))
    logger.debug("Frequency integration: error %.3g, tail %.3g", error, float(np.max(np.abs(tail))))

    matrix = result * norm * np.outer(s, s)
    return CovarianceMatrix6(
        matrix=0.5 * (matrix + matrix.T),
        mass=p.mass,
        hbar=p.hbar,
        omega_ref=model.reference_frequency(p, drift.derived),
        method="spectral",
        error_estimate=error,
    )


def plateau_log_negativity(
    p: SystemParams,
    convention: ThermalConvention = ThermalConvention.SYMMETRIZED,
    *,
    fraction: float = 0.01,
) -> float:
    """Output E_N in the frequency-independent band, evaluated at Ω = fraction·ω_eff.

    Raises:
        InstabilityError: If the trap is unstable.
    """
    drift = model.stable_drift_matrix(p)
    omega = fraction * model.reference_frequency(p, drift.derived)
    return gaussian.log_negativity(_output_variance(p, drift, omega, ThermalConvention(convention)))
