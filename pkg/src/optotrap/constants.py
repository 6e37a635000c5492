"""Physical constants and unit conversions.

All constants come from :mod:`scipy.constants` (CODATA). Since the 2019 SI
redefinition, ħ, k_B and c are exact, so every CODATA release gives identical
values for them. Frequencies are stored as angular frequencies (rad/s) throughout
the package; conversion from Hz happens only at the configuration boundary.
"""

from __future__ import annotations

import math

from scipy import constants as _codata

__all__ = (
    "HBAR",
    "K_B",
    "SPEED_OF_LIGHT",
    "TWO_PI",
    "VACUUM_VARIANCE",
    "angular_to_hz",
    "hz_to_angular",
    "wavelength_to_angular",
)

HBAR: float = _codata.hbar
K_B: float = _codata.k
SPEED_OF_LIGHT: float = _codata.c

TWO_PI: float = 2.0 * math.pi

# [Q, P] = i, so the vacuum has variance 1/2 in every quadrature.
VACUUM_VARIANCE: float = 0.5


def hz_to_angular(frequency_hz: float) -> float:
    """Convert a frequency in Hz to an angular frequency in rad/s."""
    return TWO_PI * frequency_hz


def angular_to_hz(omega: float) -> float:
    """Convert an angular frequency in rad/s to Hz."""
    return omega / TWO_PI


def wavelength_to_angular(wavelength: float, speed_of_light: float = SPEED_OF_LIGHT) -> float:
    """Angular optical frequency of a vacuum wavelength in metres."""
    return TWO_PI * speed_of_light / wavelength
