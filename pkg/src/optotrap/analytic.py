"""Closed-form output entanglement in the frequency-independent regime.

For Ω well below ω_eff the output negativity depends only on the entangler
strength ξ and the thermal degradation Θ. These expressions serve as oracles for
the spectral module and as fast parameter maps.
"""

from __future__ import annotations

import dataclasses
import math
import warnings

from optotrap import model
from optotrap.exceptions import AnalyticDomainError, StrongEntanglerWarning
from optotrap.types import SystemParams

__all__ = (
    "output_log_negativity_analytic",
    "strong_entangler_log_negativity",
    "temperature_for_theta",
)

STRONG_ENTANGLER_MIN_XI = 10.0
STRONG_ENTANGLER_WARN_XI = 100.0


def output_log_negativity_analytic(xi: float, theta: float) -> float:
    """Output negativity −½ ln(1 + 2ξ[Θ − √(Θ² + 1/ξ)]), clipped at zero.

    The argument is evaluated as 1 − 2/(Θ + √(Θ² + 1/ξ)), which is the same
    quantity without the cancellation between Θ and the root. As ξ → 0⁺ the
    result tends to 0.

    Args:
        xi: Entangler strength, > 0.
        theta: Thermal degradation, with Θ² + 1/ξ ≥ 0.

    Returns:
        E_N ≥ 0.

    Raises:
        AnalyticDomainError: If ξ ≤ 0, an input is not finite, or the argument
            of the logarithm is not positive.

    Example:
        >>> round(output_log_negativity_analytic(13.2, 1.8), 3)
        0.402
    """
    if not (math.isfinite(xi) and math.isfinite(theta)):
        msg = f"xi and theta must be finite, got xi={xi!r}, theta={theta!r}"
        raise AnalyticDomainError(msg)
    if xi <= 0:
        msg = f"xi must be positive, got {xi!r}"
        raise AnalyticDomainError(msg)
    radicand = theta**2 + 1.0 / xi
    denominator = theta + math.sqrt(radicand)
    if denominator <= 0:
        msg = f"Logarithm argument is not positive for xi={xi!r}, theta={theta!r}"
        raise AnalyticDomainError(msg)
    argument = 1.0 - 2.0 / denominator
    if argument <= 0:
        msg = f"Logarithm argument is not positive for xi={xi!r}, theta={theta!r}"
        raise AnalyticDomainError(msg)
    return max(0.0, -0.5 * math.log(argument))


def strong_entangler_log_negativity(xi: float, theta: float) -> float:
    """Strong-entangler limit −½ ln(1 − 1/Θ + ¼ξ⁻¹/Θ³).

    Only meaningful for ξ ≫ 1: ξ < 10 is rejected and ξ < 100 issues a
    :class:`~optotrap.exceptions.StrongEntanglerWarning`.

    Raises:
        AnalyticDomainError: If ξ < 10, Θ < 1, or the argument is not positive.
    """
    if not (math.isfinite(xi) and math.isfinite(theta)):
        msg = f"xi and theta must be finite, got xi={xi!r}, theta={theta!r}"
        raise AnalyticDomainError(msg)
    if xi < STRONG_ENTANGLER_MIN_XI:
        msg = f"Strong-entangler limit needs xi >= {STRONG_ENTANGLER_MIN_XI:g}, got {xi!r}"
        raise AnalyticDomainError(msg)
    if theta < 1:
        msg = f"Strong-entangler limit needs theta >= 1, got {theta!r}"
        raise AnalyticDomainError(msg)
    if xi < STRONG_ENTANGLER_WARN_XI:
        warnings.warn(
            f"xi={xi:.4g} is below {STRONG_ENTANGLER_WARN_XI:g}; the strong-entangler limit is approximate",
            StrongEntanglerWarning,
            stacklevel=2,
        )
    argument = 1.0 - 1.0 / theta + 0.25 / (xi * theta**3)
    if argument <= 0:
        msg = f"Logarithm argument is not positive for xi={xi!r}, theta={theta!r}"
        raise AnalyticDomainError(msg)
    return max(0.0, -0.5 * math.log(argument))


def temperature_for_theta(p: SystemParams, theta: float) -> float:
    """Temperature at which the optics of ``p`` give thermal degradation Θ.

    Θ − 1 is proportional to T at fixed optics, so T = (Θ − 1)/(dΘ/dT).

    Raises:
        AnalyticDomainError: If Θ < 1 or Θ does not grow with temperature.
        SingularConfigurationError: If ξ and Θ are undefined for ``p``.
    """
    if not (math.isfinite(theta) and theta >= 1):
        msg = f"theta must be >= 1, got {theta!r}"
        raise AnalyticDomainError(msg)
    _, theta_at_one_kelvin = model.entangler_parameters(dataclasses.replace(p, temperature=1.0))
    slope = theta_at_one_kelvin - 1.0
    if slope <= 0:
        msg = f"Theta does not increase with temperature (dTheta/dT = {slope:.4g} 1/K)"
        raise AnalyticDomainError(msg)
    return (theta - 1.0) / slope
