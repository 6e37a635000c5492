"""Opto-mechanical model of the two-tone optically trapped mirror.

Converts :class:`~optotrap.types.SystemParams` into derived quantities
(intra-cavity amplitudes, coupling rates, optical spring and damping, entangler
strength and thermal degradation), assembles the linear drift matrix, and decides
trap stability.

Example:
    Derive the nominal trap and check it is stable::

        from optotrap import SystemParams, model

        params = model.validate_params(SystemParams())
        drift = model.drift_matrix(params)
        report = model.is_stable(drift)
        assert report.stable
"""

from __future__ import annotations

import dataclasses
import logging
import math

import numpy as np

from optotrap.exceptions import (
    EigenSolverError,
    InstabilityError,
    ParameterValidationError,
    SingularConfigurationError,
)
from optotrap.types import DerivedParams, DriftMatrix, FieldIndex, StabilityReport, SystemParams, ThermalConvention

__all__ = (
    "canonical_scale",
    "coupling_rate",
    "derived_params",
    "drift_matrix",
    "effective_resonance",
    "effective_susceptibility",
    "entangler_parameters",
    "intracavity_amplitude",
    "is_stable",
    "mechanical_susceptibility",
    "reference_frequency",
    "stable_drift_matrix",
    "suppression_factor",
    "thermal_force_density",
    "thermal_occupation",
    "validate_params",
)

logger = logging.getLogger(__name__)

# Beyond this ħΩ/k_BT the Bose occupation is below 1e-304.
_MAX_BOSE_EXPONENT = 700.0

_NON_NEGATIVE = ("omega_m", "gamma_m", "power_1", "power_2", "temperature")
_POSITIVE = ("mass", "gamma_c", "length", "omega_c", "hbar", "boltzmann", "speed_of_light")


def validate_params(raw: SystemParams) -> SystemParams:
    """Check every invariant of the physical inputs.

    Args:
        raw: Candidate parameters, SI units with angular frequencies.

    Returns:
        The same parameters, unchanged, if all invariants hold.

    Raises:
        ParameterValidationError: Listing every violated invariant by field name.
    """
    violations: dict[str, str] = {}
    for item in dataclasses.fields(raw):
        value = getattr(raw, item.name)
        if not math.isfinite(value):
            violations[item.name] = f"must be finite, got {value!r}"
        elif item.name in _POSITIVE and value <= 0:
            violations[item.name] = f"must be > 0, got {value!r}"
        elif item.name in _NON_NEGATIVE and value < 0:
            violations[item.name] = f"must be >= 0, got {value!r}"
    if violations:
        raise ParameterValidationError(violations)
    return raw


def intracavity_amplitude(p: SystemParams, j: FieldIndex) -> float:
    """Intra-cavity amplitude α_j, with α_j² = 4 I_j γ_c / [ħ ω_c (γ_c² + Δ_j²)]."""
    delta = p.detuning(j)
    return math.sqrt(4.0 * p.power(j) * p.gamma_c / (p.hbar * p.omega_c * (p.gamma_c**2 + delta**2)))


def coupling_rate(p: SystemParams, j: FieldIndex) -> float:
    """Opto-mechanical coupling G_j = α_j ω_c / L (rad/(s·m))."""
    return intracavity_amplitude(p, j) * p.omega_c / p.length


def _spring(p: SystemParams, coupling: float, delta: float) -> tuple[float, float]:
    lorentzian = p.gamma_c**2 + delta**2
    omega_sq = -p.hbar * coupling**2 * delta / (p.mass * lorentzian)
    gamma = -2.0 * p.gamma_c * omega_sq / lorentzian
    return omega_sq, gamma


def effective_resonance(p: SystemParams) -> DerivedParams:
    """Optical spring and damping of each field and the trap totals.

    Only valid as a response description for Ω ≪ γ_c; the eigenvalues of the
    drift matrix are the authoritative stability test.

    Args:
        p: Validated parameters.

    Returns:
        DerivedParams with ``xi`` and ``theta`` left unset.
    """
    alpha_1, alpha_2 = intracavity_amplitude(p, 1), intracavity_amplitude(p, 2)
    coupling_1, coupling_2 = alpha_1 * p.omega_c / p.length, alpha_2 * p.omega_c / p.length
    omega_sq_1, gamma_1 = _spring(p, coupling_1, p.detuning_1)
    omega_sq_2, gamma_2 = _spring(p, coupling_2, p.detuning_2)
    return DerivedParams(
        alpha_1=alpha_1,
        alpha_2=alpha_2,
        coupling_1=coupling_1,
        coupling_2=coupling_2,
        omega_eff_sq_1=omega_sq_1,
        omega_eff_sq_2=omega_sq_2,
        omega_eff_sq=p.omega_m**2 + omega_sq_1 + omega_sq_2,
        gamma_eff_1=gamma_1,
        gamma_eff_2=gamma_2,
        gamma_eff=p.gamma_m + gamma_1 + gamma_2,
    )


def entangler_parameters(p: SystemParams, derived: DerivedParams | None = None) -> tuple[float, float]:
    """Entangler strength ξ and thermal degradation Θ.

    Args:
        p: Validated parameters.
        derived: Output of :func:`effective_resonance` for ``p``, if already computed.

    Returns:
        The pair (ξ, Θ).

    Raises:
        SingularConfigurationError: If either field has zero optical spring or the
            total spring is not restoring.
    """
    d = derived if derived is not None else effective_resonance(p)
    zero_springs = [j for j, w in ((1, d.omega_eff_sq_1), (2, d.omega_eff_sq_2)) if w == 0.0]
    if zero_springs:
        msg = f"omega_eff,j^2 = 0 for field(s) {zero_springs}; xi and theta are undefined"
        raise SingularConfigurationError(msg)
    if d.omega_eff_sq <= 0:
        msg = f"omega_eff^2 = {d.omega_eff_sq:.4g} rad^2/s^2 is not positive; xi is undefined"
        raise SingularConfigurationError(msg)
    xi = (
        4.0
        * p.gamma_c**2
        / (p.detuning_1 * p.detuning_2)
        * (d.omega_eff_sq_1 * d.omega_eff_sq_2 / d.omega_eff_sq**2)
    )
    thermal = p.boltzmann * p.temperature / p.hbar
    theta = 1.0 - (p.gamma_m / (2.0 * p.gamma_c)) * thermal * (
        p.detuning_1 / d.omega_eff_sq_1 + p.detuning_2 / d.omega_eff_sq_2
    )
    return xi, theta


def derived_params(p: SystemParams) -> DerivedParams:
    """All derived quantities, with ξ and Θ set to None where they are singular."""
    d = effective_resonance(p)
    try:
        xi, theta = entangler_parameters(p, d)
    except SingularConfigurationError:
        return d
    return dataclasses.replace(d, xi=xi, theta=theta)


def reference_frequency(p: SystemParams, derived: DerivedParams | None = None) -> float:
    """Frequency used to put the mirror on the same footing as the optical quadratures.

    This is ω_eff when the trap is restoring, else the bare pendulum frequency,
    else the cavity half linewidth.
    """
    d = derived if derived is not None else effective_resonance(p)
    for candidate in (d.omega_eff_sq, p.omega_m**2, p.gamma_c**2):
        if candidate > 0:
            return math.sqrt(candidate)
    return 1.0


def canonical_scale(p: SystemParams, omega_norm: float) -> tuple[float, float]:
    """Zero-point scales (q₀, p₀) = (√(ħ/(mω)), √(ħmω)) of an oscillator at ``omega_norm``.

    Raises:
        SingularConfigurationError: If ``omega_norm`` is not positive.
    """
    if not omega_norm > 0:
        msg = f"Normalization frequency must be positive, got {omega_norm!r}"
        raise SingularConfigurationError(msg)
    return math.sqrt(p.hbar / (p.mass * omega_norm)), math.sqrt(p.hbar * p.mass * omega_norm)


def drift_matrix(p: SystemParams) -> DriftMatrix:
    """Assemble the drift matrix K over [q, p, X1, Y1, X2, Y2].

    Args:
        p: Validated parameters.

    Returns:
        The drift matrix, its input scaling (1, 1, √(2γ_c) ×4), the canonical
        coordinate scale and the derived parameters it was built from.
    """
    d = derived_params(p)
    k = np.zeros((6, 6))
    k[0, 1] = 1.0 / p.mass
    k[1, 0] = -p.mass * p.omega_m**2
    k[1, 1] = -p.gamma_m
    k[1, 2] = p.hbar * d.coupling_1
    k[1, 4] = p.hbar * d.coupling_2
    for row, coupling, delta in ((2, d.coupling_1, p.detuning_1), (4, d.coupling_2, p.detuning_2)):
        k[row, row] = -p.gamma_c
        k[row, row + 1] = delta
        k[row + 1, row] = -delta
        k[row + 1, row + 1] = -p.gamma_c
        k[row + 1, 0] = coupling
    root = math.sqrt(2.0 * p.gamma_c)
    q0, p0 = canonical_scale(p, reference_frequency(p, d))
    return DriftMatrix(
        matrix=k,
        input_scaling=np.array([1.0, 1.0, root, root, root, root]),
        coordinate_scale=np.array([q0, p0, 1.0, 1.0, 1.0, 1.0]),
        derived=d,
    )


def is_stable(drift: DriftMatrix | np.ndarray) -> StabilityReport:
    """Decide stability from the eigenvalues of K.

    The quasi-static proxy (ω_eff² > 0 and γ_eff > 0) is reported alongside when
    the drift matrix carries derived parameters.

    Args:
        drift: Drift matrix, or a bare square array.

    Returns:
        A StabilityReport; ``stable`` is True iff every eigenvalue has Re < 0.

    Raises:
        EigenSolverError: If the eigen-solver fails or returns non-finite values.
    """
    if not isinstance(drift, DriftMatrix):
        drift = DriftMatrix(matrix=drift, input_scaling=np.ones(len(drift)), coordinate_scale=np.ones(len(drift)))
    try:
        eigenvalues = np.linalg.eigvals(drift.canonical())
    except np.linalg.LinAlgError as exc:
        msg = f"Eigenvalue computation did not converge: {exc}"
        raise EigenSolverError(msg) from exc
    if not np.all(np.isfinite(eigenvalues)):
        msg = "Eigenvalue computation returned non-finite values"
        raise EigenSolverError(msg)
    eigenvalues = eigenvalues[np.argsort(-eigenvalues.real, kind="stable")]
    stable = bool(np.all(eigenvalues.real < 0))
    logger.debug("Drift eigenvalues: %s", eigenvalues)

    d = drift.derived
    if d is None:
        return StabilityReport(stable=stable, eigenvalues=eigenvalues)
    proxy = d.omega_eff_sq > 0 and d.gamma_eff > 0
    if proxy != stable:
        logger.warning(
            "Eigenvalue verdict (stable=%s) disagrees with quasi-static proxy (omega_eff^2=%.4g, gamma_eff=%.4g)",
            stable,
            d.omega_eff_sq,
            d.gamma_eff,
        )
    return StabilityReport(
        stable=stable,
        eigenvalues=eigenvalues,
        quasi_static_stable=proxy,
        omega_eff_sq=d.omega_eff_sq,
        gamma_eff=d.gamma_eff,
    )


def _compliance(mass: float, omega_sq: float, gamma: float, omega: float) -> complex:
    denominator = mass * complex(omega_sq - omega**2, gamma * omega)
    if denominator == 0:
        msg = f"Susceptibility diverges at omega={omega!r} rad/s"
        raise SingularConfigurationError(msg)
    return 1.0 / denominator


def mechanical_susceptibility(p: SystemParams, omega: float) -> complex:
    """Bare pendulum compliance χ_m(Ω) = [m(ω_m² + iγ_mΩ − Ω²)]⁻¹ (m/N)."""
    return _compliance(p.mass, p.omega_m**2, p.gamma_m, omega)


def effective_susceptibility(p: SystemParams, omega: float) -> complex:
    """Opto-mechanical compliance χ_eff(Ω) = [m(ω_eff² + iγ_effΩ − Ω²)]⁻¹ (m/N).

    The closed form only describes the response for Ω ≪ γ_c; it is evaluated at any
    Ω regardless. With both fields off this is exactly :func:`mechanical_susceptibility`.
    """
    if p.power_1 == 0 and p.power_2 == 0:
        return mechanical_susceptibility(p, omega)
    d = effective_resonance(p)
    return _compliance(p.mass, d.omega_eff_sq, d.gamma_eff, omega)


def suppression_factor(p: SystemParams) -> float:
    """Suppression ω_m²/ω_eff² of the mirror's response to external forces.

    Raises:
        SingularConfigurationError: If ω_eff² is not positive.
    """
    d = effective_resonance(p)
    if d.omega_eff_sq <= 0:
        msg = f"omega_eff^2 = {d.omega_eff_sq:.4g} rad^2/s^2 is not positive"
        raise SingularConfigurationError(msg)
    return p.omega_m**2 / d.omega_eff_sq


def thermal_occupation(p: SystemParams, omega: float) -> float:
    """Bose occupation N(Ω) = 1/(exp(ħΩ/k_BT) − 1) at |Ω|; infinite at Ω = 0 for T > 0."""
    omega = abs(omega)
    if p.temperature == 0:
        return 0.0
    if omega == 0:
        return math.inf
    x = p.hbar * omega / (p.boltzmann * p.temperature)
    return 0.0 if x > _MAX_BOSE_EXPONENT else 1.0 / math.expm1(x)


def thermal_force_density(
    p: SystemParams,
    omega: float,
    convention: ThermalConvention = ThermalConvention.PAPER,
) -> float:
    """Spectral density of the Langevin force F_th (N²·s).

    The density is evaluated at |Ω| so it is even in frequency:

    * ``paper``: 2γ_m m ħΩ N(Ω), tending to 2γ_m m k_BT as Ω → 0 and to 0 at T = 0;
    * ``symmetrized``: 2γ_m m ħΩ (N(Ω) + ½), which keeps the zero-point term;
    * ``classical``: 2γ_m m k_BT, independent of Ω.

    Args:
        p: Validated parameters.
        omega: Sideband angular frequency (rad/s).
        convention: Which thermal correlator to use.

    Returns:
        The force spectral density.
    """
    prefactor = 2.0 * p.gamma_m * p.mass
    kt = p.boltzmann * p.temperature
    omega = abs(omega)
    convention = ThermalConvention(convention)
    if convention is ThermalConvention.CLASSICAL:
        return prefactor * kt
    if convention is ThermalConvention.SYMMETRIZED:
        if p.temperature == 0:
            return prefactor * 0.5 * p.hbar * omega
        if omega == 0:
            return prefactor * kt
        half = 0.5 * p.hbar * omega / kt
        return prefactor * kt * half / math.tanh(half)
    if p.temperature == 0:
        return 0.0
    if omega == 0:
        return prefactor * kt
    x = p.hbar * omega / kt
    if x > _MAX_BOSE_EXPONENT:
        return 0.0
    return prefactor * kt * x / math.expm1(x)


def stable_drift_matrix(p: SystemParams) -> DriftMatrix:
    """Drift matrix of ``p``, refusing configurations without a steady state.

    Raises:
        InstabilityError: If any eigenvalue of K has Re ≥ 0.
    """
    drift = drift_matrix(p)
    report = is_stable(drift)
    if not report.stable:
        msg = "Trap is unstable"
        raise InstabilityError(msg, report)
    return drift
