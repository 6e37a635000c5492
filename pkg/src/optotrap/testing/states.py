"""Reference Gaussian states and drift matrices for tests.

Variance matrices follow the library convention: [Q1, P1, Q2, P2] with vacuum
variance ½ per quadrature.
"""

from __future__ import annotations

import math

import numpy as np
import numpy.typing as npt
from scipy.linalg import expm

from optotrap.gaussian import SYMPLECTIC_FORM, local_rotation, local_squeezer
from optotrap.types import VarianceMatrix4

__all__ = (
    "random_local_symplectic",
    "random_physical_state",
    "random_stable_drift",
    "random_symplectic",
    "separability_boundary_state",
    "thermal_product_state",
    "two_mode_squeezed_state",
)

_Z = np.diag([1.0, -1.0])


def two_mode_squeezed_state(r: float, occupation: float = 0.0) -> VarianceMatrix4:
    """Two-mode squeezed thermal state; E_N = max(0, 2r − ln(2n + 1)).

    Args:
        r: Squeezing parameter.
        occupation: Thermal occupation n of each mode before squeezing.
    """
    c, s = math.cosh(2.0 * r), math.sinh(2.0 * r)
    eye = np.eye(2)
    matrix = (occupation + 0.5) * np.block([[c * eye, s * _Z], [s * _Z, c * eye]])
    return VarianceMatrix4(matrix=matrix)


def thermal_product_state(n1: float, n2: float) -> VarianceMatrix4:
    """Uncorrelated thermal modes with occupations ``n1`` and ``n2``."""
    return VarianceMatrix4(matrix=np.diag([n1 + 0.5, n1 + 0.5, n2 + 0.5, n2 + 0.5]))


def separability_boundary_state(occupation: float) -> VarianceMatrix4:
    """Squeezed thermal state exactly on the separability boundary, e^{2r} = 2n + 1."""
    return two_mode_squeezed_state(0.5 * math.log(2.0 * occupation + 1.0), occupation)


def random_local_symplectic(rng: np.random.Generator) -> npt.NDArray[np.float64]:
    """Random 2×2 symplectic: rotation, squeezer, rotation."""
    theta, phi = rng.uniform(0.0, 2.0 * math.pi, size=2)
    r = rng.uniform(-1.0, 1.0)
    return local_rotation(theta) @ local_squeezer(r) @ local_rotation(phi)


def random_symplectic(rng: np.random.Generator, scale: float = 0.5) -> npt.NDArray[np.float64]:
    """Random two-mode symplectic exp(J·H) for a random symmetric H."""
    h = rng.normal(scale=scale, size=(4, 4))
    return expm(SYMPLECTIC_FORM @ (h + h.T) / 2.0)


def random_physical_state(rng: np.random.Generator) -> VarianceMatrix4:
    """Random thermal state S·diag(ν₁, ν₁, ν₂, ν₂)·Sᵀ with ν_k ≥ ½."""
    nu = 0.5 + rng.exponential(0.5, size=2)
    s = random_symplectic(rng)
    matrix = s @ np.diag([nu[0], nu[0], nu[1], nu[1]]) @ s.T
    return VarianceMatrix4(matrix=0.5 * (matrix + matrix.T))


def random_stable_drift(rng: np.random.Generator, size: int = 6) -> npt.NDArray[np.float64]:
    """Random real matrix shifted so its spectral abscissa is −1."""
    a = rng.normal(size=(size, size))
    return a - (np.max(np.linalg.eigvals(a).real) + 1.0) * np.eye(size)
