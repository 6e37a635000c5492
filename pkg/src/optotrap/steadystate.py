"""Steady-state intra-cavity covariance by the Lyapunov route.

With white input noise the stationary covariance C of the intra-cavity coordinates
solves K·C + C·Kᵀ + D = 0. The thermal force is coloured, so it enters D at its
value near the trap's response frequency (the Markovian approximation); the
``classical`` convention uses the flat 2γ_m m k_BT.
"""

from __future__ import annotations

import dataclasses
import logging
import math
from typing import TYPE_CHECKING

import numpy as np
from scipy.linalg import solve_continuous_lyapunov

from optotrap import gaussian, model
from optotrap.exceptions import InstabilityError, InvalidMatrixError, NumericalError
from optotrap.types import CovarianceMatrix6, DriftMatrix, Partition, SystemParams, ThermalConvention

if TYPE_CHECKING:
    import numpy.typing as npt

__all__ = (
    "covariance_deviation",
    "diffusion_matrix",
    "intracavity_entanglement",
    "solve_lyapunov",
    "steady_state_covariance",
)

logger = logging.getLogger(__name__)

RESIDUAL_TOLERANCE = 1e-10


def diffusion_matrix(
    p: SystemParams,
    convention: ThermalConvention = ThermalConvention.CLASSICAL,
) -> npt.NDArray[np.float64]:
    """Diffusion matrix D = diag(0, S_F, γ_c, γ_c, γ_c, γ_c).

    Each optical quadrature slot is 2γ_c times the vacuum variance ½, which makes an
    empty cavity relax to exactly the vacuum. The thermal slot is 2γ_m m k_BT for
    ``classical``; other conventions evaluate the force spectrum at ω_eff.

    Args:
        p: Validated parameters.
        convention: Thermal convention for the force slot.

    Returns:
        The 6×6 diagonal diffusion matrix in SI mirror units.
    """
    convention = ThermalConvention(convention)
    omega = 0.0 if convention is ThermalConvention.CLASSICAL else model.reference_frequency(p)
    thermal = model.thermal_force_density(p, omega, convention)
    vacuum = 2.0 * p.gamma_c * 0.5
    return np.diag([0.0, thermal, vacuum, vacuum, vacuum, vacuum])


def solve_lyapunov(
    drift: DriftMatrix | npt.ArrayLike,
    diffusion: npt.ArrayLike,
) -> CovarianceMatrix6:
    """Solve K·C + C·Kᵀ + D = 0 for the stationary covariance.

    The solve runs in the drift matrix's balanced coordinates and is mapped back,
    so the SI mirror scales never meet the optical ones in one factorization.

    Args:
        drift: Stable 6×6 drift matrix, or a bare array in consistent units.
        diffusion: Symmetric 6×6 diffusion matrix in the same units as ``drift``.

    Returns:
        The symmetric covariance with its relative residual
        ‖K·C + C·Kᵀ + D‖ / ‖D‖ (balanced coordinates, Frobenius norm).

    Raises:
        InstabilityError: If K has an eigenvalue with Re ≥ 0.
        InvalidMatrixError: If D has the wrong shape or is not symmetric.
        NumericalError: If the solver fails, returns non-finite values or misses the residual tolerance.
    """
    if not isinstance(drift, DriftMatrix):
        k = np.asarray(drift, dtype=float)
        n = k.shape[0] if k.ndim else 0
        drift = DriftMatrix(matrix=k, input_scaling=np.ones(n), coordinate_scale=np.ones(n))
    d = np.asarray(diffusion, dtype=float)
    if d.shape != (drift.size, drift.size):
        msg = f"Diffusion matrix must be {drift.size}x{drift.size}, got shape {d.shape}"
        raise InvalidMatrixError(msg)
    if np.max(np.abs(d - d.T), initial=0.0) > 1e-12 * max(1.0, float(np.max(np.abs(d)))):
        msg = "Diffusion matrix is not symmetric"
        raise InvalidMatrixError(msg)
    report = model.is_stable(drift)
    if not report.stable:
        msg = "No steady state: drift matrix is unstable"
        raise InstabilityError(msg, report)

    s = drift.coordinate_scale
    k = drift.canonical()
    d_canonical = d / np.outer(s, s)
    try:
        c = solve_continuous_lyapunov(k, -d_canonical)
    except (np.linalg.LinAlgError, ValueError) as exc:
        msg = f"Lyapunov solve failed: {exc}"
        raise NumericalError(msg) from exc
    if not np.all(np.isfinite(c)):
        msg = "Lyapunov solve returned non-finite values"
        raise NumericalError(msg)
    c = 0.5 * (c + c.T)

    scale = float(np.linalg.norm(d_canonical))
    residual = float(np.linalg.norm(k @ c + c @ k.T + d_canonical))
    relative = residual / scale if scale > 0 else residual
    logger.debug("Lyapunov solve: relative residual %.3g", relative)
    if relative > RESIDUAL_TOLERANCE:
        msg = f"Lyapunov residual {relative:.3g} exceeds {RESIDUAL_TOLERANCE:.0e}"
        raise NumericalError(msg)
    return CovarianceMatrix6(matrix=c * np.outer(s, s), residual=relative, method="lyapunov")


def steady_state_covariance(
    p: SystemParams,
    convention: ThermalConvention = ThermalConvention.CLASSICAL,
) -> CovarianceMatrix6:
    """Stationary intra-cavity covariance of ``p`` (diffusion matrix → Lyapunov solve)."""
    drift = model.stable_drift_matrix(p)
    cov = solve_lyapunov(drift, diffusion_matrix(p, convention))
    omega_ref = model.reference_frequency(p, drift.derived)
    return dataclasses.replace(cov, mass=p.mass, hbar=p.hbar, omega_ref=omega_ref)


def intracavity_entanglement(
    p: SystemParams,
    partition: Partition | str = Partition.MIRROR_CARRIER,
    convention: ThermalConvention = ThermalConvention.CLASSICAL,
    omega_norm: float | None = None,
) -> float:
    """Logarithmic negativity between two intra-cavity subsystems.

    Args:
        p: Validated, stable parameters.
        partition: Which pair of subsystems.
        convention: Thermal convention for the diffusion matrix.
        omega_norm: Mirror normalization frequency; defaults to ω_eff.

    Returns:
        E_N of the selected pair.
    """
    cov = steady_state_covariance(p, convention)
    return gaussian.log_negativity(gaussian.reduce_bipartition(cov, partition, omega_norm))


def covariance_deviation(
    a: CovarianceMatrix6 | npt.ArrayLike,
    b: CovarianceMatrix6 | npt.ArrayLike,
) -> float:
    """Largest deviation max |a_ij − b_ij| / √(a_ii a_jj) between two covariances.

    The normalization is invariant under rescaling of any coordinate. Elements
    whose normalization vanishes only count when they differ.
    """
    ma = a.matrix if isinstance(a, CovarianceMatrix6) else np.asarray(a, dtype=float)
    mb = b.matrix if isinstance(b, CovarianceMatrix6) else np.asarray(b, dtype=float)
    if ma.shape != mb.shape:
        msg = f"Covariance shapes differ: {ma.shape} vs {mb.shape}"
        raise InvalidMatrixError(msg)
    diagonal = np.clip(np.diag(ma), 0.0, None)
    norm = np.sqrt(np.outer(diagonal, diagonal))
    difference = np.abs(ma - mb)
    worst = 0.0
    for i, j in zip(*np.nonzero(difference), strict=True):
        worst = max(worst, difference[i, j] / norm[i, j] if norm[i, j] > 0 else math.inf)
    return worst
