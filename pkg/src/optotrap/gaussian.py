"""Two-mode Gaussian state algebra.

Variance matrices are over [Q1, P1, Q2, P2] with [Q_j, P_k] = iδ_jk, so the vacuum
has variance ½ per quadrature. Entanglement is quantified by the logarithmic
negativity (natural log) and decided with the Simon criterion in its reduced
two-mode form 4 det V > Σ − ¼, where Σ = det V₁₁ + det V₂₂ − 2 det V₁₂. That form
presumes the standard two-mode reduction; the general four-invariant criterion is
not used.
"""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

import numpy as np
from scipy.linalg import block_diag

from optotrap.exceptions import InvalidMatrixError, ParameterValidationError, UnphysicalStateError
from optotrap.types import CovarianceMatrix6, Partition, VarianceMatrix4

if TYPE_CHECKING:
    import numpy.typing as npt

__all__ = (
    "SYMPLECTIC_FORM",
    "apply_local_symplectic",
    "is_physical",
    "is_separable",
    "local_rotation",
    "local_squeezer",
    "log_negativity",
    "partial_transpose",
    "reduce_bipartition",
    "simon_invariants",
    "symplectic_eigenvalues",
)

SYMPLECTIC_FORM = np.kron(np.eye(2), np.array([[0.0, 1.0], [-1.0, 0.0]]))
"""Two-mode symplectic form J = ⊕ [[0, 1], [−1, 0]]."""

_TIME_REVERSAL = np.diag([1.0, 1.0, 1.0, -1.0])

PHYSICAL_TOLERANCE = 1e-9
SYMMETRY_TOLERANCE = 1e-12
SYMPLECTIC_TOLERANCE = 1e-10
# E_N at or below this is reported as exactly zero.
NEGATIVITY_FLOOR = 1e-12


def _as_variance(v: VarianceMatrix4 | npt.ArrayLike) -> VarianceMatrix4:
    if not isinstance(v, VarianceMatrix4):
        try:
            v = VarianceMatrix4(matrix=np.asarray(v, dtype=float))
        except ValueError as exc:
            raise InvalidMatrixError(str(exc)) from exc
    matrix = v.matrix
    scale = max(1.0, float(np.max(np.abs(matrix))))
    if np.max(np.abs(matrix - matrix.T)) > SYMMETRY_TOLERANCE * scale:
        msg = "Variance matrix is not symmetric"
        raise InvalidMatrixError(msg)
    return v


def partial_transpose(v: VarianceMatrix4 | npt.ArrayLike) -> VarianceMatrix4:
    """Time reversal of the second mode only, P2 → −P2.

    The result is a spectral matrix, not necessarily a state.
    """
    v = _as_variance(v)
    return VarianceMatrix4(matrix=_TIME_REVERSAL @ v.matrix @ _TIME_REVERSAL, is_state=False)


def symplectic_eigenvalues(
    v: VarianceMatrix4 | npt.ArrayLike,
    *,
    partial_transpose: bool = False,
) -> tuple[float, float]:
    """Symplectic eigenvalues (ν₋, ν₊) with ν₋ ≤ ν₊.

    Computed as the absolute eigenvalues of J·V, which come in ±iν pairs.

    Args:
        v: Symmetric 4×4 variance matrix.
        partial_transpose: Apply P2 → −P2 first.

    Returns:
        The pair (ν₋, ν₊).

    Raises:
        InvalidMatrixError: If ``v`` is not a symmetric 4×4 matrix.
    """
    matrix = _as_variance(v).matrix
    if partial_transpose:
        matrix = _TIME_REVERSAL @ matrix @ _TIME_REVERSAL
    magnitudes = np.sort(np.abs(np.linalg.eigvals(SYMPLECTIC_FORM @ matrix)))
    return float(magnitudes[:2].mean()), float(magnitudes[2:].mean())


def simon_invariants(v: VarianceMatrix4 | npt.ArrayLike) -> tuple[float, float]:
    """Return (Σ, det V) with Σ = det V₁₁ + det V₂₂ − 2 det V₁₂."""
    v = _as_variance(v)
    sigma = np.linalg.det(v.block_11) + np.linalg.det(v.block_22) - 2.0 * np.linalg.det(v.block_12)
    return float(sigma), float(np.linalg.det(v.matrix))


def log_negativity(v: VarianceMatrix4 | npt.ArrayLike) -> float:
    """Logarithmic negativity E_N = max[0, −½ ln(2Σ − 2√(Σ² − 4 det V))].

    The argument is evaluated as 8 det V / (Σ + √(Σ² − 4 det V)), the same value
    without the cancellation near the vacuum. Values at or below 1e-12 are
    returned as 0.

    Raises:
        InvalidMatrixError: If ``v`` is not symmetric.
        UnphysicalStateError: If Σ² < 4 det V beyond tolerance or det V ≤ 0.
    """
    sigma, det_v = simon_invariants(v)
    discriminant = sigma**2 - 4.0 * det_v
    if discriminant < -PHYSICAL_TOLERANCE * max(1.0, sigma**2):
        msg = f"Sigma^2 < 4 det V (Sigma={sigma:.6g}, det V={det_v:.6g})"
        raise UnphysicalStateError(msg)
    denominator = sigma + math.sqrt(max(discriminant, 0.0))
    if det_v <= 0 or denominator <= 0:
        msg = f"Variance matrix is not positive (Sigma={sigma:.6g}, det V={det_v:.6g})"
        raise UnphysicalStateError(msg)
    value = -0.5 * math.log(8.0 * det_v / denominator)
    return value if value > NEGATIVITY_FLOOR else 0.0


def is_physical(v: VarianceMatrix4 | npt.ArrayLike) -> bool:
    """True iff V is positive definite with ν₋ ≥ ½ − 1e-9."""
    v = _as_variance(v)
    if np.linalg.eigvalsh(v.matrix)[0] <= 0:
        return False
    nu_minus, _ = symplectic_eigenvalues(v)
    return nu_minus >= 0.5 - PHYSICAL_TOLERANCE


def is_separable(v: VarianceMatrix4 | npt.ArrayLike) -> bool:
    """Simon criterion: separable iff 4 det V ≥ Σ − ¼.

    The boundary counts as separable. Rounding at the boundary is resolved by the
    negativity, so the verdict always matches ``log_negativity(v) == 0``.

    Raises:
        UnphysicalStateError: If ``v`` is not a physical state.
    """
    v = _as_variance(v)
    if not is_physical(v):
        msg = "Separability is only defined for physical states"
        raise UnphysicalStateError(msg)
    sigma, det_v = simon_invariants(v)
    if 4.0 * det_v - sigma + 0.25 >= 0:
        return True
    return log_negativity(v) == 0.0


def local_rotation(theta: float) -> npt.NDArray[np.float64]:
    """Phase-space rotation by ``theta`` (a change of homodyne quadrature)."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def local_squeezer(r: float) -> npt.NDArray[np.float64]:
    """Single-mode squeezer diag(e^{−r}, e^{r})."""
    return np.diag([math.exp(-r), math.exp(r)])


def apply_local_symplectic(
    v: VarianceMatrix4 | npt.ArrayLike,
    s1: npt.ArrayLike,
    s2: npt.ArrayLike,
) -> VarianceMatrix4:
    """Transform V by (S1 ⊕ S2) V (S1 ⊕ S2)ᵀ.

    Args:
        v: Symmetric 4×4 variance matrix.
        s1: 2×2 symplectic acting on mode 1.
        s2: 2×2 symplectic acting on mode 2.

    Returns:
        The transformed matrix, flagged as a state iff ``v`` was.

    Raises:
        InvalidMatrixError: If either block is not 2×2 with unit determinant.
    """
    v = _as_variance(v)
    blocks = [np.asarray(s, dtype=float) for s in (s1, s2)]
    for index, block in enumerate(blocks, start=1):
        if block.shape != (2, 2) or abs(np.linalg.det(block) - 1.0) > SYMPLECTIC_TOLERANCE:
            msg = f"Local transformation S{index} is not a 2x2 symplectic matrix"
            raise InvalidMatrixError(msg)
    s = block_diag(*blocks)
    transformed = s @ v.matrix @ s.T
    return VarianceMatrix4(matrix=0.5 * (transformed + transformed.T), is_state=v.is_state)


def reduce_bipartition(
    cov: CovarianceMatrix6,
    partition: Partition | str,
    omega_norm: float | None = None,
) -> VarianceMatrix4:
    """Extract the two-mode state of one pair of intra-cavity subsystems.

    When the mirror is part of the pair, (q, p) are put in canonical units
    Q = q·√(mω/ħ), P = p/√(ħmω). Any ω gives the same entanglement because the
    rescaling is a local symplectic.

    Args:
        cov: Steady-state covariance in SI mirror units.
        partition: Which pair to keep.
        omega_norm: Normalization frequency (rad/s); defaults to ``cov.omega_ref``.

    Returns:
        The 4×4 variance matrix of the pair.

    Raises:
        ParameterValidationError: If ``partition`` or ``omega_norm`` is invalid.
    """
    try:
        partition = Partition(partition)
    except ValueError as exc:
        valid = ", ".join(item.value for item in Partition)
        raise ParameterValidationError({"partition": f"must be one of {valid}, got {partition!r}"}) from exc
    omega = cov.omega_ref if omega_norm is None else omega_norm
    scale = np.ones(6)
    if partition.includes_mirror:
        if not (math.isfinite(omega) and omega > 0):
            raise ParameterValidationError({"omega_norm": f"must be positive, got {omega!r}"})
        scale[0] = math.sqrt(cov.mass * omega / cov.hbar)
        scale[1] = 1.0 / math.sqrt(cov.hbar * cov.mass * omega)
    index = np.array(partition.indices)
    canonical = cov.matrix * np.outer(scale, scale)
    block = canonical[np.ix_(index, index)]
    return VarianceMatrix4(matrix=0.5 * (block + block.T))
