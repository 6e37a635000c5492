"""Pytest fixtures for testing trap models.

This module provides reusable pytest fixtures with ready-made parameter sets and a
seeded random generator.

Usage:
    Register the module as a plugin in your conftest.py:

    >>> pytest_plugins = ["optotrap.testing.fixtures"]
"""

from __future__ import annotations

import dataclasses

import numpy as np
import pytest

from optotrap.model import validate_params
from optotrap.types import SystemParams

RANDOM_SEED = 20240917


@pytest.fixture
def nominal_params() -> SystemParams:
    """Provide the nominal two-tone trap at 300 K.

    Returns:
        Validated SystemParams with every default

    Example:
        >>> def test_nominal(nominal_params):
        ...     assert nominal_params.temperature == 300.0
    """
    return validate_params(SystemParams())


@pytest.fixture
def decoupled_params(nominal_params: SystemParams) -> SystemParams:
    """Provide the nominal mirror and cavity with both drives switched off.

    Returns:
        SystemParams with zero carrier and subcarrier power
    """
    return dataclasses.replace(nominal_params, power_1=0.0, power_2=0.0)


@pytest.fixture
def unstable_params(nominal_params: SystemParams) -> SystemParams:
    """Provide a carrier-only trap, whose optical spring is anti-damped.

    Returns:
        SystemParams with the subcarrier switched off
    """
    return dataclasses.replace(nominal_params, power_2=0.0)


@pytest.fixture
def rng() -> np.random.Generator:
    """Provide a seeded random generator, so random-state tests are reproducible.

    Returns:
        numpy Generator seeded with RANDOM_SEED
    """
    return np.random.default_rng(RANDOM_SEED)
