"""Tests for the thermal degradation map driver."""

from __future__ import annotations

import numpy as np
import pytest

from optotrap.config import RunConfig
from optotrap.drivers import ThetaMapDriver
from optotrap.types import RunKind


@pytest.fixture
def map_config() -> RunConfig:
    """Provide a two-point map through the room-temperature Θ.

    Returns:
        RunConfig covering Θ − 1 from 0.1 to 0.8
    """
    return RunConfig(run_kind=RunKind.THETA_MAP, grid_min=0.1, grid_max=0.8, grid_points=2, grid_scale="lin")


class TestThetaMapDriver:
    """Test suite for ThetaMapDriver."""

    def test_header(self) -> None:
        """Test the map columns."""
        assert ThetaMapDriver().header == ("theta_minus_1", "E_N_analytic", "E_N_numeric")

    def test_room_temperature_point(self, map_config: RunConfig) -> None:
        """Test the closed form and numerics at Θ = 1.8."""
        rows = ThetaMapDriver().rows(map_config)

        theta_minus_1, closed_form, numeric = rows[1]
        assert theta_minus_1 == 0.8
        assert closed_form == pytest.approx(0.401, abs=2e-3)
        assert numeric == pytest.approx(closed_form, rel=0.02)

    def test_decreasing_in_theta(self, map_config: RunConfig) -> None:
        """Test that more thermal degradation means less entanglement."""
        rows = ThetaMapDriver().rows(map_config)

        assert rows[0][1] > rows[1][1]
        assert rows[0][2] > rows[1][2]

    def test_default_grid_agrees_on_every_row(self) -> None:
        """Test that closed form and numerics agree within 2% across the default Θ − 1 grid."""
        rows = ThetaMapDriver().rows(RunConfig(run_kind=RunKind.THETA_MAP))

        assert len(rows) == 41
        assert rows[0][0] == pytest.approx(0.01)
        assert rows[-1][0] == pytest.approx(100.0)
        for theta_minus_1, closed_form, numeric in rows:
            assert closed_form is not None
            assert numeric is not None
            assert closed_form > 0, theta_minus_1
            assert numeric > 0, theta_minus_1
            assert numeric == pytest.approx(closed_form, rel=0.02), theta_minus_1

    def test_default_grid_strictly_decreasing(self) -> None:
        """Test that both columns fall strictly with Θ over the default grid."""
        rows = ThetaMapDriver().rows(RunConfig(run_kind=RunKind.THETA_MAP))

        for column in (1, 2):
            values = np.array([row[column] for row in rows], dtype=float)
            assert np.all(np.diff(values) < 0), column

    def test_unstable_rows_kept_empty(self, map_config: RunConfig) -> None:
        """Test that an unstable trap keeps its grid with empty values."""
        map_config.power_2 = 0.0

        rows = ThetaMapDriver().rows(map_config)

        assert rows == [(0.1, None, None), (0.8, None, None)]
