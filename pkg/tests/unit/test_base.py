"""Unit tests for the driver protocol and BaseRunDriver.

Tests the shared driver behaviour:
- Protocol compliance
- Abstract method enforcement
- Ordered, optionally parallel grid evaluation
- CSV formatting
"""

from __future__ import annotations

import dataclasses
import io
import time
from typing import TYPE_CHECKING

import pytest

from optotrap.base import BaseRunDriver, RunDriver
from optotrap.drivers import SpectrumDriver
from optotrap.types import RunKind

if TYPE_CHECKING:
    from optotrap.base import Row
    from optotrap.config import RunConfig
    from optotrap.types import SystemParams


class _FixedDriver(BaseRunDriver):
    """Driver returning a fixed table."""

    def __init__(self, table: list[Row]) -> None:
        self.table = table

    @property
    def run_kind(self) -> RunKind:
        return RunKind.SPECTRUM

    @property
    def header(self) -> tuple[str, ...]:
        return ("x", "y")

    def rows(self, cfg: RunConfig) -> list[Row]:
        return self.table


class TestRunDriverProtocol:
    """Test suite for the RunDriver protocol."""

    def test_builtin_driver_is_run_driver(self) -> None:
        """Test that built-in drivers satisfy the runtime-checkable protocol."""
        assert isinstance(SpectrumDriver(), RunDriver)

    def test_object_is_not_run_driver(self) -> None:
        """Test that unrelated objects do not satisfy the protocol."""
        assert not isinstance(object(), RunDriver)

    def test_abstract_methods_enforced(self) -> None:
        """Test that BaseRunDriver cannot be instantiated directly."""
        with pytest.raises(TypeError):
            BaseRunDriver()  # type: ignore[abstract]


class TestEvaluate:
    """Test suite for BaseRunDriver.evaluate."""

    def test_serial(self) -> None:
        """Test a plain ordered map."""
        assert BaseRunDriver.evaluate(lambda x: x * x, [1, 2, 3]) == [1, 4, 9]

    def test_parallel_keeps_order(self) -> None:
        """Test that results follow input order even when later items finish first."""
        def slow_first(x: int) -> int:
            time.sleep(0.01 * (5 - x))
            return x

        assert BaseRunDriver.evaluate(slow_first, range(5), workers=4) == [0, 1, 2, 3, 4]


class TestStablePoint:
    """Test suite for BaseRunDriver.is_stable_point."""

    def test_stable(self, nominal_params: SystemParams) -> None:
        """Test that the nominal trap is stable."""
        assert BaseRunDriver.is_stable_point(nominal_params)

    def test_unstable_logged(self, unstable_params: SystemParams, caplog: pytest.LogCaptureFixture) -> None:
        """Test that unstable points are reported with their reasons."""
        with caplog.at_level("WARNING", logger="optotrap.base"):
            assert not BaseRunDriver.is_stable_point(unstable_params)

        assert "Skipping unstable point" in caplog.text


class TestCsvOutput:
    """Test suite for CSV formatting."""

    @pytest.mark.parametrize(
        ("value", "expected"),
        [
            (None, ""),
            (True, "true"),
            (False, "false"),
            (3, "3"),
            (0.1, "0.1"),
            (1.0 / 3.0, "0.333333333333"),
            (1.5e-30, "1.5e-30"),
            (float("nan"), "nan"),
            ("reason", "reason"),
        ],
    )
    def test_format_cell(self, value: object, expected: str) -> None:
        """Test rendering of each cell type."""
        assert BaseRunDriver.format_cell(value) == expected  # type: ignore[arg-type]

    def test_format_cell_digits(self) -> None:
        """Test the significant-digit setting."""
        assert BaseRunDriver.format_cell(2.0 / 3.0, digits=3) == "0.667"

    def test_write_csv(self) -> None:
        """Test header, rows and newline-only line endings."""
        driver = _FixedDriver([(1.0, None), (2.5, True)])
        stream = io.StringIO()

        written = driver.write_csv(driver.table, stream)

        assert written == 2
        assert stream.getvalue() == "x,y\n1,\n2.5,true\n"

    def test_run_uses_configured_digits(self, run_config: RunConfig) -> None:
        """Test that run writes the driver's rows with the configured precision."""
        driver = _FixedDriver([(1.0 / 3.0, 2)])
        stream = io.StringIO()

        written = driver.run(dataclasses.replace(run_config, digits=4), stream)

        assert written == 1
        assert stream.getvalue() == "x,y\n0.3333,2\n"
