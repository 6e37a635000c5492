"""Testing utilities for optotrap.

This module provides reference Gaussian states and pytest fixtures for testing
the model and the state algebra. They are used by the library's own test suite
and can be used by downstream code that builds on it.

The testing module includes:

- **States**: Closed-form two-mode states and random physical states and drifts
- **Fixtures**: Reusable pytest fixtures with nominal, decoupled and unstable traps

Example:
    Using the reference states in tests:

    >>> from optotrap import gaussian
    >>> from optotrap.testing import two_mode_squeezed_state
    >>> round(gaussian.log_negativity(two_mode_squeezed_state(0.5)), 12)
    1.0

    Using pytest fixtures (register ``optotrap.testing.fixtures`` as a plugin):

    >>> def test_trap(nominal_params):
    ...     assert nominal_params.power_1 == 5.0
"""

from __future__ import annotations

from optotrap.testing.fixtures import decoupled_params, nominal_params, rng, unstable_params
from optotrap.testing.states import (
    random_local_symplectic,
    random_physical_state,
    random_stable_drift,
    random_symplectic,
    separability_boundary_state,
    thermal_product_state,
    two_mode_squeezed_state,
)

__all__ = (
    # Fixtures
    "decoupled_params",
    "nominal_params",
    # States
    "random_local_symplectic",
    "random_physical_state",
    "random_stable_drift",
    "random_symplectic",
    "rng",
    "separability_boundary_state",
    "thermal_product_state",
    "two_mode_squeezed_state",
    "unstable_params",
)
