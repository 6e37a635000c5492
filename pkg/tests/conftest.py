"""Shared pytest configuration and fixtures for optotrap tests.

This module registers the library's testing fixtures and adds parameter sets
used across several test modules.
"""

from __future__ import annotations

import dataclasses
from typing import TYPE_CHECKING

import pytest

from optotrap.config import RunConfig
from optotrap.types import RunKind

if TYPE_CHECKING:
    from optotrap.types import SystemParams

# Re-export all testing fixtures for convenience
pytest_plugins = ["optotrap.testing.fixtures"]


@pytest.fixture
def cold_params(nominal_params: SystemParams) -> SystemParams:
    """Provide the nominal optics at 3 K.

    Returns:
        SystemParams of the nominal trap with T = 3 K
    """
    return dataclasses.replace(nominal_params, temperature=3.0)


@pytest.fixture
def zero_temperature_params(nominal_params: SystemParams) -> SystemParams:
    """Provide the nominal optics at absolute zero.

    Returns:
        SystemParams of the nominal trap with T = 0
    """
    return dataclasses.replace(nominal_params, temperature=0.0)


@pytest.fixture
def run_config() -> RunConfig:
    """Provide a default configuration for a short spectrum run.

    Returns:
        RunConfig with a 3-point grid
    """
    return RunConfig(run_kind=RunKind.SPECTRUM, grid_min=10.0, grid_max=1000.0, grid_points=3)
