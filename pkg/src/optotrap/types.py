"""Core data types for the trapped-mirror model.

This module defines the primary data structures used throughout the package:
physical inputs, derived opto-mechanical quantities, the drift matrix, Gaussian
variance and covariance matrices, input noise spectra and entanglement spectra.
All frequencies are angular (rad/s).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Literal

import numpy as np
import numpy.typing as npt

from optotrap.constants import (
    HBAR,
    K_B,
    SPEED_OF_LIGHT,
    TWO_PI,
    hz_to_angular,
    wavelength_to_angular,
)
from optotrap.exceptions import InvalidMatrixError, ParameterValidationError

__all__ = (
    "CovarianceMatrix6",
    "DerivedParams",
    "DriftMatrix",
    "FieldIndex",
    "InputSpectralDensity",
    "Partition",
    "RunKind",
    "SpectrumSeries",
    "StabilityReport",
    "SystemParams",
    "ThermalConvention",
    "VarianceMatrix4",
)

FieldIndex = Literal[1, 2]
"""Optical field selector: 1 is the carrier, 2 the subcarrier."""

FloatArray = npt.NDArray[np.float64]
ComplexArray = npt.NDArray[np.complex128]

# Order of the intra-cavity coordinates: [q, p, X1, Y1, X2, Y2].
COORDINATES: tuple[str, ...] = ("q", "p", "X1", "Y1", "X2", "Y2")


class ThermalConvention(str, Enum):
    """How the thermal Langevin force spectrum is evaluated.

    Attributes:
        PAPER: 2γ_m m ħΩ N(Ω), occupation only, without the zero-point term.
        SYMMETRIZED: 2γ_m m ħΩ (N(Ω) + 1/2), the symmetrized (Hermitianized) form.
        CLASSICAL: 2γ_m m k_B T, frequency-flat (Markovian, high-temperature).
    """

    PAPER = "paper"
    SYMMETRIZED = "symmetrized"
    CLASSICAL = "classical"


class Partition(str, Enum):
    """Two-mode reduction of the intra-cavity state."""

    MIRROR_CARRIER = "mirror-carrier"
    MIRROR_SUBCARRIER = "mirror-subcarrier"
    CARRIER_SUBCARRIER = "carrier-subcarrier"

    @property
    def indices(self) -> tuple[int, int, int, int]:
        """Rows/columns of the 6×6 covariance selected by this partition."""
        return _PARTITION_INDICES[self]

    @property
    def includes_mirror(self) -> bool:
        return self is not Partition.CARRIER_SUBCARRIER


_PARTITION_INDICES: dict[Partition, tuple[int, int, int, int]] = {
    Partition.MIRROR_CARRIER: (0, 1, 2, 3),
    Partition.MIRROR_SUBCARRIER: (0, 1, 4, 5),
    Partition.CARRIER_SUBCARRIER: (2, 3, 4, 5),
}


class RunKind(str, Enum):
    """Experiment drivers available from the command line."""

    SPECTRUM = "spectrum"
    TEMP_SWEEP = "temp-sweep"
    THETA_MAP = "theta-map"
    INTRACAVITY = "intracavity"
    STABILITY_REPORT = "stability-report"


@dataclass(frozen=True, slots=True, kw_only=True)
class SystemParams:
    """Physical inputs of the trapped-mirror system.

    Defaults are the nominal parameter set: a 0.5 g mirror on a 1 Hz, Q = 10⁶
    pendulum in a 1 m cavity of 9.5 kHz half linewidth at 1064 nm, driven by a
    5 W carrier at Δ₁ = −3γ_c and a 0.3 W subcarrier at Δ₂ = γ_c/2, at 300 K.

    Attributes:
        omega_m: Mechanical angular frequency (rad/s).
        gamma_m: Mechanical damping rate (rad/s).
        mass: Reduced mass of the mirror (kg).
        omega_c: Cavity angular resonant frequency (rad/s).
        gamma_c: Cavity half linewidth (rad/s).
        length: Cavity length (m).
        power_1: Incident carrier power (W).
        power_2: Incident subcarrier power (W).
        detuning_1: Carrier detuning Δ₁ (rad/s).
        detuning_2: Subcarrier detuning Δ₂ (rad/s).
        temperature: Ambient temperature (K).
        hbar: Reduced Planck constant (J·s).
        boltzmann: Boltzmann constant (J/K).
        speed_of_light: Speed of light in vacuum (m/s).
    """

    omega_m: float = hz_to_angular(1.0)
    gamma_m: float = hz_to_angular(1.0e-6)
    mass: float = 0.5e-3
    omega_c: float = wavelength_to_angular(1064.0e-9)
    gamma_c: float = hz_to_angular(9.5e3)
    length: float = 1.0
    power_1: float = 5.0
    power_2: float = 0.3
    detuning_1: float = hz_to_angular(-28.5e3)
    detuning_2: float = hz_to_angular(4.75e3)
    temperature: float = 300.0
    hbar: float = HBAR
    boltzmann: float = K_B
    speed_of_light: float = SPEED_OF_LIGHT

    @property
    def wavelength(self) -> float:
        """Vacuum wavelength of the cavity resonance (m)."""
        return TWO_PI * self.speed_of_light / self.omega_c

    @property
    def quality_factor(self) -> float:
        """Mechanical quality factor ω_m/γ_m."""
        return self.omega_m / self.gamma_m

    def power(self, j: FieldIndex) -> float:
        """Incident power of field ``j`` (W)."""
        return _select(j, self.power_1, self.power_2)

    def detuning(self, j: FieldIndex) -> float:
        """Detuning of field ``j`` (rad/s)."""
        return _select(j, self.detuning_1, self.detuning_2)


def _select(j: int, first: float, second: float) -> float:
    if j == 1:
        return first
    if j == 2:
        return second
    raise ParameterValidationError({"field_index": f"must be 1 (carrier) or 2 (subcarrier), got {j!r}"})


@dataclass(frozen=True, slots=True, kw_only=True)
class DerivedParams:
    """Opto-mechanical quantities derived from :class:`SystemParams`.

    Attributes:
        alpha_1: Intra-cavity carrier amplitude (√photons).
        alpha_2: Intra-cavity subcarrier amplitude (√photons).
        coupling_1: Carrier opto-mechanical coupling G₁ (rad/(s·m)).
        coupling_2: Subcarrier opto-mechanical coupling G₂ (rad/(s·m)).
        omega_eff_sq_1: Carrier optical-spring contribution (rad²/s², may be negative).
        omega_eff_sq_2: Subcarrier optical-spring contribution (rad²/s², may be negative).
        omega_eff_sq: Total squared effective resonance ω_m² + Σ ω_eff,j².
        gamma_eff_1: Carrier optical damping contribution (rad/s).
        gamma_eff_2: Subcarrier optical damping contribution (rad/s).
        gamma_eff: Total effective damping γ_m + Σ γ_eff,j.
        xi: Entangler strength, or None where it is undefined.
        theta: Thermal degradation parameter, or None where it is undefined.
    """

    alpha_1: float
    alpha_2: float
    coupling_1: float
    coupling_2: float
    omega_eff_sq_1: float
    omega_eff_sq_2: float
    omega_eff_sq: float
    gamma_eff_1: float
    gamma_eff_2: float
    gamma_eff: float
    xi: float | None = None
    theta: float | None = None

    @property
    def omega_eff(self) -> float:
        """Effective resonance (rad/s); NaN when the total spring is not restoring."""
        return float(np.sqrt(self.omega_eff_sq)) if self.omega_eff_sq > 0 else float("nan")


@dataclass(frozen=True, slots=True, kw_only=True, eq=False)
class DriftMatrix:
    """Linear dynamics generator of the intra-cavity fluctuations.

    ``matrix`` acts on [q, p, X1, Y1, X2, Y2] in SI units for the mirror. Because
    those units span more than thirty orders of magnitude, every solve runs in the
    balanced coordinates u' = u / coordinate_scale, see :meth:`canonical`.

    Attributes:
        matrix: The 6×6 real drift matrix K.
        input_scaling: How the raw noises enter u_in: (1, 1, √(2γ_c), …).
        coordinate_scale: Per-coordinate scale (q₀, p₀, 1, 1, 1, 1).
        derived: Derived parameters the matrix was built from, if any.
    """

    matrix: FloatArray
    input_scaling: FloatArray = field(default_factory=lambda: np.ones(6))
    coordinate_scale: FloatArray = field(default_factory=lambda: np.ones(6))
    derived: DerivedParams | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrix", np.asarray(self.matrix, dtype=float))
        object.__setattr__(self, "input_scaling", np.asarray(self.input_scaling, dtype=float))
        object.__setattr__(self, "coordinate_scale", np.asarray(self.coordinate_scale, dtype=float))
        n = self.matrix.shape[0]
        if self.matrix.shape != (n, n) or self.input_scaling.shape != (n,) or self.coordinate_scale.shape != (n,):
            msg = "Drift matrix must be square with matching scaling vectors"
            raise InvalidMatrixError(msg)

    @property
    def size(self) -> int:
        return int(self.matrix.shape[0])

    def canonical(self) -> FloatArray:
        """Drift matrix in balanced coordinates, diag(1/s)·K·diag(s)."""
        s = self.coordinate_scale
        return self.matrix * s[np.newaxis, :] / s[:, np.newaxis]

    def canonical_input(self) -> FloatArray:
        """Raw-noise input map in balanced coordinates, diag(input_scaling / s)."""
        return np.diag(self.input_scaling / self.coordinate_scale)


@dataclass(frozen=True, slots=True, kw_only=True, eq=False)
class StabilityReport:
    """Outcome of a stability test.

    Attributes:
        stable: True iff every eigenvalue of K has strictly negative real part.
        eigenvalues: Eigenvalues of K, sorted by decreasing real part.
        quasi_static_stable: ω_eff² > 0 and γ_eff > 0, or None without derived data.
        omega_eff_sq: Total squared effective resonance, if known.
        gamma_eff: Total effective damping, if known.
    """

    stable: bool
    eigenvalues: ComplexArray
    quasi_static_stable: bool | None = None
    omega_eff_sq: float | None = None
    gamma_eff: float | None = None

    @property
    def spectral_abscissa(self) -> float:
        """Largest real part among the eigenvalues."""
        return float(np.max(self.eigenvalues.real))

    @property
    def agrees_with_quasi_static(self) -> bool | None:
        if self.quasi_static_stable is None:
            return None
        return self.stable == self.quasi_static_stable

    @property
    def reasons(self) -> list[str]:
        """Human-readable causes of instability (empty when stable)."""
        reasons: list[str] = []
        if self.omega_eff_sq is not None and self.omega_eff_sq <= 0:
            reasons.append(f"omega_eff^2 <= 0 ({self.omega_eff_sq:.4g} rad^2/s^2)")
        if self.gamma_eff is not None and self.gamma_eff <= 0:
            reasons.append(f"gamma_eff < 0 ({self.gamma_eff:.4g} rad/s)")
        if not self.stable:
            reasons.append(f"max Re(eigenvalue) = {self.spectral_abscissa:.4g} rad/s")
        return reasons


@dataclass(frozen=True, slots=True, kw_only=True, eq=False)
class VarianceMatrix4:
    """Two-mode variance matrix over [Q1, P1, Q2, P2] with [Q_j, P_k] = iδ_jk.

    Attributes:
        matrix: The 4×4 real symmetric matrix of symmetrized second moments.
        is_state: False for raw spectral matrices not asserted to be states.
    """

    matrix: FloatArray
    is_state: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrix", np.asarray(self.matrix, dtype=float))
        if self.matrix.shape != (4, 4):
            msg = f"Variance matrix must be 4x4, got shape {self.matrix.shape}"
            raise InvalidMatrixError(msg)

    @property
    def block_11(self) -> FloatArray:
        return self.matrix[:2, :2]

    @property
    def block_22(self) -> FloatArray:
        return self.matrix[2:, 2:]

    @property
    def block_12(self) -> FloatArray:
        return self.matrix[:2, 2:]


@dataclass(frozen=True, slots=True, kw_only=True, eq=False)
class CovarianceMatrix6:
    """Steady-state covariance of the intra-cavity coordinates [q, p, X1, Y1, X2, Y2].

    (q, p) are in SI units (m, kg·m/s); the optical quadratures are dimensionless.
    The mirror fields default to 1, for covariances of drift matrices that are
    already in canonical units.

    Attributes:
        matrix: The 6×6 real symmetric covariance.
        mass: Mirror mass used to canonicalize (q, p) (kg).
        hbar: Reduced Planck constant used to canonicalize (q, p) (J·s).
        omega_ref: Default normalization frequency for the mirror (rad/s).
        method: "lyapunov" or "spectral".
        residual: Relative Lyapunov residual, when solved that way.
        error_estimate: Max relative quadrature error estimate, when integrated.
    """

    matrix: FloatArray
    mass: float = 1.0
    hbar: float = 1.0
    omega_ref: float = 1.0
    method: str = "lyapunov"
    residual: float | None = None
    error_estimate: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "matrix", np.asarray(self.matrix, dtype=float))
        if self.matrix.shape != (6, 6):
            msg = f"Covariance matrix must be 6x6, got shape {self.matrix.shape}"
            raise InvalidMatrixError(msg)


@dataclass(frozen=True, slots=True, kw_only=True, eq=False)
class InputSpectralDensity:
    """Diagonal spectral density of the raw inputs [0, F_th, X_in1, Y_in1, X_in2, Y_in2].

    Attributes:
        omega: Sideband angular frequency (rad/s).
        matrix: 6×6 real diagonal matrix (vacuum entries 1/2, thermal in N²·s).
        convention: Thermal convention used for the F_th entry.
    """

    omega: float
    matrix: FloatArray
    convention: ThermalConvention

    @property
    def thermal(self) -> float:
        return float(self.matrix[1, 1])


@dataclass(frozen=True, slots=True, kw_only=True, eq=False)
class SpectrumSeries:
    """Logarithmic negativity of the output fields over a sideband-frequency grid.

    Attributes:
        grid: Strictly ascending sideband angular frequencies (rad/s).
        values: E_N at each grid point (≥ 0).
        sigma: Σ of the partially transposed variance matrix at each point.
        det_v: det V at each point.
        nu_minus: Smallest partially transposed symplectic eigenvalue at each point.
        physical: Physicality flag of the output state at each point.
    """

    grid: FloatArray
    values: FloatArray
    sigma: FloatArray
    det_v: FloatArray
    nu_minus: FloatArray
    physical: npt.NDArray[np.bool_]

    def __post_init__(self) -> None:
        if self.grid.ndim != 1 or np.any(np.diff(self.grid) <= 0):
            msg = "Spectrum grid must be strictly ascending"
            raise InvalidMatrixError(msg)
        n = self.grid.size
        for name in ("values", "sigma", "det_v", "nu_minus", "physical"):
            if getattr(self, name).shape != (n,):
                msg = f"Diagnostic {name!r} must have one entry per grid point"
                raise InvalidMatrixError(msg)

    def __len__(self) -> int:
        return int(self.grid.size)
