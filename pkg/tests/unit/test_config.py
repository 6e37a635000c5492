"""Unit tests for run configuration parsing, overrides and emission."""

from __future__ import annotations

import dataclasses

import numpy as np
import pytest

from optotrap.config import DEFAULT_GRIDS, GridSpec, RunConfig, emit_config, parse_config, parse_grid, with_overrides
from optotrap.constants import TWO_PI
from optotrap.exceptions import ConfigError
from optotrap.types import RunKind, SystemParams, ThermalConvention


class TestParseConfig:
    """Test suite for parse_config."""

    def test_empty_gives_defaults(self, nominal_params: SystemParams) -> None:
        """Test that an empty file is the nominal trap."""
        cfg = parse_config("")

        assert cfg == RunConfig()
        assert cfg.system_params() == nominal_params

    def test_single_override(self) -> None:
        """Test that one key changes only that setting."""
        cfg = parse_config("temperature = 4\n")

        assert cfg == dataclasses.replace(RunConfig(), temperature=4.0)

    def test_comments_and_blank_lines(self) -> None:
        """Test that comments and blank lines are ignored."""
        cfg = parse_config("# cold run\n\nTemperature = 4  # kelvin\nrun_kind = temp-sweep\n")

        assert cfg.temperature == 4.0
        assert cfg.run_kind is RunKind.TEMP_SWEEP

    def test_detuning_in_hz(self) -> None:
        """Test that detunings are given in Hz and converted to rad/s."""
        params = parse_config("detuning_1 = -28500\n").system_params()

        assert params.detuning_1 == pytest.approx(-3.0 * params.gamma_c, rel=1e-12)

    def test_cavity_frequency_replaces_wavelength(self) -> None:
        """Test that a cavity frequency can be given instead of the wavelength."""
        cfg = parse_config("cavity_frequency = 2.8e14\n")

        assert cfg.wavelength is None
        assert cfg.system_params().omega_c == pytest.approx(TWO_PI * 2.8e14)

    def test_both_cavity_keys_rejected(self) -> None:
        """Test that wavelength and cavity frequency are exclusive."""
        with pytest.raises(ConfigError, match="exactly one"):
            parse_config("wavelength = 1064e-9\ncavity_frequency = 2.8e14\n")

    def test_run_settings(self) -> None:
        """Test parsing of the non-physical keys."""
        cfg = parse_config(
            "convention = paper\n"
            "grid_scale = lin\n"
            "grid_points = 5\n"
            "workers = 3\n"
            "crosscheck_rows = 0,2,-1\n"
            "output = a.csv\n"
        )

        assert cfg.convention is ThermalConvention.PAPER
        assert cfg.grid_scale == "lin"
        assert cfg.grid_points == 5
        assert cfg.workers == 3
        assert cfg.crosscheck_rows == (0, 2, -1)
        assert cfg.output == "a.csv"

    @pytest.mark.parametrize(
        ("source", "line_number", "match"),
        [
            ("mass = 0.5e-3\n\nfoo = 1\n", 3, "unknown key"),
            ("temperature = 4\ntemperature = 5\n", 2, "duplicate key"),
            ("power_1 = lots\n", 1, "power_1"),
            ("# header\npower_1 5\n", 2, "key = value"),
            ("run_kind = nonsense\n", 1, "run_kind"),
            ("digits = 0\n", 1, "digits"),
            ("temperature = 4\nmass = -1\n", 2, "mass"),
            ("cavity_linewidth = 0\n", 1, "cavity_linewidth"),
            ("grid_min = 100\ngrid_max = 10\n", 1, "grid min"),
        ],
    )
    def test_errors_carry_line_numbers(self, source: str, line_number: int, match: str) -> None:
        """Test that every rejected file names the offending line."""
        with pytest.raises(ConfigError, match=match) as exc_info:
            parse_config(source)

        assert exc_info.value.line_number == line_number
        assert str(exc_info.value).startswith(f"line {line_number}: ")


class TestEmitConfig:
    """Test suite for emit_config."""

    def test_round_trip(self) -> None:
        """Test that an emitted configuration re-parses to the same run."""
        cfg = dataclasses.replace(
            RunConfig(),
            temperature=3.0,
            power_2=0.15,
            mechanical_damping=1.0 / 3.0,
            run_kind=RunKind.THETA_MAP,
            grid_min=0.1,
            grid_points=11,
            convention=ThermalConvention.CLASSICAL,
            output="map.csv",
            crosscheck_rows=(),
        )

        assert parse_config(emit_config(cfg)) == cfg

    def test_lists_every_key(self) -> None:
        """Test that the effective configuration is complete."""
        text = emit_config(RunConfig())

        for item in dataclasses.fields(RunConfig):
            assert f"\n{item.name} = " in text
        assert "cavity_frequency = none" in text


class TestParseGrid:
    """Test suite for parse_grid."""

    def test_parses_fields(self) -> None:
        """Test the min,max,points,scale form."""
        assert parse_grid("10, 1000, 3, log") == {
            "grid_min": 10.0,
            "grid_max": 1000.0,
            "grid_points": 3,
            "grid_scale": "log",
        }

    @pytest.mark.parametrize("text", ["10,1000,3", "10,1000,3,log,extra", "10,1000,3,cubic", "a,1000,3,log"])
    def test_rejects_malformed(self, text: str) -> None:
        """Test that malformed grids are configuration errors."""
        with pytest.raises(ConfigError):
            parse_grid(text)


class TestWithOverrides:
    """Test suite for with_overrides."""

    def test_assignments_after_typed_updates(self) -> None:
        """Test that ``key=value`` assignments win over typed updates."""
        cfg = with_overrides(RunConfig(), ["temperature=4"], temperature=10.0, run_kind=RunKind.TEMP_SWEEP)

        assert cfg.temperature == 4.0
        assert cfg.run_kind is RunKind.TEMP_SWEEP

    def test_cavity_frequency_override(self) -> None:
        """Test that overriding the cavity frequency clears the default wavelength."""
        cfg = with_overrides(RunConfig(), ["cavity_frequency=2.8e14"])

        assert cfg.wavelength is None

    @pytest.mark.parametrize(("assignments", "updates"), [(["colour=red"], {}), ([], {"colour": "red"}), (["=4"], {})])
    def test_rejects_unknown(self, assignments: list[str], updates: dict[str, str]) -> None:
        """Test that unknown or empty keys are refused."""
        with pytest.raises(ConfigError):
            with_overrides(RunConfig(), assignments, **updates)

    def test_revalidates(self) -> None:
        """Test that overrides are checked against the physical invariants."""
        with pytest.raises(ConfigError, match="mass"):
            with_overrides(RunConfig(), ["mass=0"])


class TestGridSpec:
    """Test suite for GridSpec."""

    def test_log_values(self) -> None:
        """Test geometric spacing with exact end points."""
        values = GridSpec(min=10.0, max=1000.0, points=3).values()

        np.testing.assert_allclose(values, [10.0, 100.0, 1000.0])
        assert values[0] == 10.0
        assert values[-1] == 1000.0

    def test_lin_values(self) -> None:
        """Test uniform spacing from zero."""
        np.testing.assert_allclose(GridSpec(min=0.0, max=300.0, points=4, scale="lin").values(), [0, 100, 200, 300])

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"min": 10.0, "max": 10.0, "points": 3},
            {"min": 10.0, "max": 1.0, "points": 3},
            {"min": 1.0, "max": 10.0, "points": 1},
            {"min": 0.0, "max": 10.0, "points": 3, "scale": "log"},
            {"min": 1.0, "max": 10.0, "points": 3, "scale": "cubic"},
        ],
    )
    def test_invalid(self, kwargs: dict[str, object]) -> None:
        """Test that degenerate grids are refused."""
        with pytest.raises(ConfigError):
            GridSpec(**kwargs)  # type: ignore[arg-type]

    def test_defaults_per_run_kind(self) -> None:
        """Test that explicit grid keys override the run kind's default."""
        cfg = RunConfig(run_kind=RunKind.TEMP_SWEEP, grid_points=9)

        assert cfg.grid() == dataclasses.replace(DEFAULT_GRIDS[RunKind.TEMP_SWEEP], points=9)

    def test_stability_report_has_no_grid(self) -> None:
        """Test that single-point runs have no grid."""
        with pytest.raises(ConfigError, match="no grid"):
            RunConfig(run_kind=RunKind.STABILITY_REPORT).grid()
