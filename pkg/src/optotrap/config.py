"""Run configuration for the command-line drivers.

A run is described by a flat ``key = value`` text file, one pair per line with
``#`` comments. Values are in laboratory units (Hz, W, kg, K, m) and are kept in
those units on :class:`RunConfig`; conversion to angular SI happens in
:meth:`RunConfig.system_params`, so an emitted configuration re-parses to the
exact same run.

Example::

    from optotrap.config import emit_config, parse_config

    cfg = parse_config("temperature = 4\\nrun_kind = temp-sweep\\n")
    assert parse_config(emit_config(cfg)) == cfg
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, Literal

import numpy as np

from optotrap import model
from optotrap.constants import hz_to_angular, wavelength_to_angular
from optotrap.exceptions import ConfigError, ParameterValidationError
from optotrap.types import RunKind, SystemParams, ThermalConvention

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable

    import numpy.typing as npt

__all__ = (
    "DEFAULT_GRIDS",
    "GridSpec",
    "RunConfig",
    "emit_config",
    "parse_config",
    "parse_grid",
    "with_overrides",
)

GridScale = Literal["log", "lin"]


@dataclass(frozen=True, slots=True, kw_only=True)
class GridSpec:
    """A one-dimensional sweep grid.

    Attributes:
        min: First grid value.
        max: Last grid value.
        points: Number of points, at least 2.
        scale: "log" for geometric spacing, "lin" for uniform spacing.
    """

    min: float
    max: float
    points: int
    scale: GridScale = "log"

    def __post_init__(self) -> None:
        if self.scale not in ("log", "lin"):
            msg = f"grid scale must be 'log' or 'lin', got {self.scale!r}"
            raise ConfigError(msg)
        if not self.min < self.max:
            msg = f"grid min must be below max, got {self.min!r} >= {self.max!r}"
            raise ConfigError(msg)
        if self.points < 2:
            msg = f"grid needs at least 2 points, got {self.points!r}"
            raise ConfigError(msg)
        if self.scale == "log" and self.min <= 0:
            msg = f"log grid needs a positive min, got {self.min!r}"
            raise ConfigError(msg)

    def values(self) -> npt.NDArray[np.float64]:
        """Grid values in ascending order, with exact end points."""
        if self.scale == "log":
            values = np.geomspace(self.min, self.max, self.points)
        else:
            values = np.linspace(self.min, self.max, self.points)
        values[0], values[-1] = self.min, self.max
        return values


DEFAULT_GRIDS: dict[RunKind, GridSpec] = {
    RunKind.SPECTRUM: GridSpec(min=10.0, max=50.0e3, points=500, scale="log"),
    RunKind.TEMP_SWEEP: GridSpec(min=0.3, max=300.0, points=4, scale="log"),
    RunKind.THETA_MAP: GridSpec(min=0.01, max=100.0, points=41, scale="log"),
    RunKind.INTRACAVITY: GridSpec(min=0.001, max=300.0, points=7, scale="log"),
}
"""Default sweep per run kind: Hz for spectrum, K for temperature sweeps, Θ − 1 for theta-map."""


@dataclass
class RunConfig:
    """Configuration of one command-line run.

    Physical values are stored in the units of the config file; defaults are the
    nominal trap.

    Attributes:
        mechanical_frequency: Pendulum frequency ω_m/2π (Hz).
        mechanical_damping: Pendulum damping γ_m/2π (Hz).
        mass: Mirror reduced mass (kg).
        wavelength: Vacuum wavelength of the cavity resonance (m).
        cavity_frequency: Cavity resonance ω_c/2π (Hz), alternative to ``wavelength``.
        cavity_linewidth: Cavity half linewidth γ_c/2π (Hz).
        cavity_length: Cavity length (m).
        power_1: Carrier power (W).
        power_2: Subcarrier power (W).
        detuning_1: Carrier detuning Δ₁/2π (Hz).
        detuning_2: Subcarrier detuning Δ₂/2π (Hz).
        temperature: Ambient temperature (K).
        run_kind: Which driver to run.
        grid_min: Sweep start, or None for the run kind's default.
        grid_max: Sweep end, or None for the run kind's default.
        grid_points: Number of sweep points, or None for the default.
        grid_scale: "log" or "lin", or None for the default.
        convention: Thermal convention for the force spectrum.
        output: CSV path, or None for standard output.
        digits: Significant digits of CSV values.
        workers: Worker threads for grid evaluation.
        crosscheck_rows: Row indices of the intracavity sweep that get a frequency
            integration cross-check (negative indices count from the end).
    """

    # Mirror
    mechanical_frequency: float = 1.0
    mechanical_damping: float = 1.0e-6
    mass: float = 0.5e-3

    # Cavity
    wavelength: float | None = 1064.0e-9
    cavity_frequency: float | None = None
    cavity_linewidth: float = 9.5e3
    cavity_length: float = 1.0

    # Drives
    power_1: float = 5.0
    power_2: float = 0.3
    detuning_1: float = -28.5e3
    detuning_2: float = 4.75e3

    # Environment
    temperature: float = 300.0

    # Run
    run_kind: RunKind = RunKind.SPECTRUM
    grid_min: float | None = None
    grid_max: float | None = None
    grid_points: int | None = None
    grid_scale: GridScale | None = None
    convention: ThermalConvention = ThermalConvention.SYMMETRIZED
    output: str | None = None
    digits: int = 12
    workers: int = 1
    crosscheck_rows: tuple[int, ...] = (0, -1)

    def system_params(self) -> SystemParams:
        """Convert to validated SI parameters with angular frequencies.

        Raises:
            ConfigError: If the physical values violate an invariant, naming the
                config keys at fault.
        """
        if (self.wavelength is None) == (self.cavity_frequency is None):
            msg = "set exactly one of wavelength and cavity_frequency"
            raise ConfigError(msg)
        omega_c = (
            wavelength_to_angular(self.wavelength)
            if self.wavelength is not None
            else hz_to_angular(self.cavity_frequency)  # type: ignore[arg-type]
        )
        params = SystemParams(
            omega_m=hz_to_angular(self.mechanical_frequency),
            gamma_m=hz_to_angular(self.mechanical_damping),
            mass=self.mass,
            omega_c=omega_c,
            gamma_c=hz_to_angular(self.cavity_linewidth),
            length=self.cavity_length,
            power_1=self.power_1,
            power_2=self.power_2,
            detuning_1=hz_to_angular(self.detuning_1),
            detuning_2=hz_to_angular(self.detuning_2),
            temperature=self.temperature,
        )
        try:
            return model.validate_params(params)
        except ParameterValidationError as exc:
            details = "; ".join(f"{_PARAM_KEYS.get(name, name)}: {message}" for name, message in exc.violations.items())
            raise ConfigError(details) from exc

    def grid(self) -> GridSpec:
        """Effective sweep grid: explicit grid keys over the run kind's default.

        Raises:
            ConfigError: If the run kind has no grid or the grid is invalid.
        """
        default = DEFAULT_GRIDS.get(self.run_kind)
        if default is None:
            msg = f"run kind {self.run_kind.value!r} has no grid"
            raise ConfigError(msg)
        return GridSpec(
            min=default.min if self.grid_min is None else self.grid_min,
            max=default.max if self.grid_max is None else self.grid_max,
            points=default.points if self.grid_points is None else self.grid_points,
            scale=default.scale if self.grid_scale is None else self.grid_scale,
        )


_PARAM_KEYS = {
    "omega_m": "mechanical_frequency",
    "gamma_m": "mechanical_damping",
    "omega_c": "wavelength/cavity_frequency",
    "gamma_c": "cavity_linewidth",
    "length": "cavity_length",
    "detuning_1": "detuning_1",
    "detuning_2": "detuning_2",
}


def _optional(convert: Callable[[str], Any]) -> Callable[[str], Any]:
    def parse(text: str) -> Any:
        return None if text.lower() in {"", "none"} else convert(text)

    return parse


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        msg = f"must be >= 1, got {value}"
        raise ValueError(msg)
    return value


def _scale(text: str) -> GridScale:
    if text not in ("log", "lin"):
        msg = f"must be 'log' or 'lin', got {text!r}"
        raise ValueError(msg)
    return text  # type: ignore[return-value]


def _rows(text: str) -> tuple[int, ...]:
    if text.lower() in {"", "none"}:
        return ()
    return tuple(int(item) for item in text.split(","))


_CONVERTERS: dict[str, Callable[[str], Any]] = {
    "mechanical_frequency": float,
    "mechanical_damping": float,
    "mass": float,
    "wavelength": _optional(float),
    "cavity_frequency": _optional(float),
    "cavity_linewidth": float,
    "cavity_length": float,
    "power_1": float,
    "power_2": float,
    "detuning_1": float,
    "detuning_2": float,
    "temperature": float,
    "run_kind": RunKind,
    "grid_min": _optional(float),
    "grid_max": _optional(float),
    "grid_points": _optional(int),
    "grid_scale": _optional(_scale),
    "convention": ThermalConvention,
    "output": _optional(str),
    "digits": _positive_int,
    "workers": _positive_int,
    "crosscheck_rows": _rows,
}


def _convert(key: str, text: str, line_number: int | None = None) -> Any:
    converter = _CONVERTERS.get(key)
    if converter is None:
        msg = f"unknown key {key!r}"
        raise ConfigError(msg, line_number)
    try:
        return converter(text)
    except ValueError as exc:
        msg = f"invalid value for {key}: {text!r} ({exc})"
        raise ConfigError(msg, line_number) from exc


def _split(entry: str, line_number: int | None = None) -> tuple[str, str]:
    key, sep, value = entry.partition("=")
    if not sep or not key.strip():
        msg = f"expected 'key = value', got {entry.strip()!r}"
        raise ConfigError(msg, line_number)
    return key.strip().lower(), value.strip()


def _apply(cfg: RunConfig, updates: dict[str, Any]) -> RunConfig:
    # A cavity frequency replaces the default wavelength unless both were given.
    if updates.get("cavity_frequency") is not None and "wavelength" not in updates:
        updates = {**updates, "wavelength": None}
    return dataclasses.replace(cfg, **updates)


def _check(cfg: RunConfig, lines: dict[str, int] | None = None) -> RunConfig:
    lines = lines or {}
    try:
        cfg.system_params()
    except ConfigError as exc:
        culprits = [lines[key] for key in lines if key in str(exc)]
        raise ConfigError(str(exc), min(culprits) if culprits else None) from exc
    if cfg.run_kind in DEFAULT_GRIDS:
        try:
            cfg.grid()
        except ConfigError as exc:
            culprits = [lines[key] for key in lines if key.startswith("grid_")]
            raise ConfigError(str(exc), min(culprits) if culprits else None) from exc
    return cfg


def parse_config(source: str) -> RunConfig:
    """Parse a ``key = value`` configuration.

    Args:
        source: Config text; blank lines and ``#`` comments are ignored.

    Returns:
        The configuration, with defaults for every key not given.

    Raises:
        ConfigError: On malformed lines, unknown or repeated keys, bad values, or
            physical values that violate an invariant; carries the line number.
    """
    updates: dict[str, Any] = {}
    lines: dict[str, int] = {}
    for line_number, raw in enumerate(source.splitlines(), start=1):
        entry = raw.split("#", 1)[0].strip()
        if not entry:
            continue
        key, text = _split(entry, line_number)
        if key in lines:
            msg = f"duplicate key {key!r} (first set on line {lines[key]})"
            raise ConfigError(msg, line_number)
        updates[key] = _convert(key, text, line_number)
        lines[key] = line_number
    return _check(_apply(RunConfig(), updates), lines)


def parse_grid(text: str) -> dict[str, Any]:
    """Parse a ``min,max,points,log|lin`` grid option into grid keys.

    Raises:
        ConfigError: If the text does not have four comma-separated fields.
    """
    fields = [item.strip() for item in text.split(",")]
    if len(fields) != 4:
        msg = f"grid must be 'min,max,points,log|lin', got {text!r}"
        raise ConfigError(msg)
    keys = ("grid_min", "grid_max", "grid_points", "grid_scale")
    return {key: _convert(key, value) for key, value in zip(keys, fields, strict=True)}


def with_overrides(cfg: RunConfig, assignments: Iterable[str] = (), **updates: Any) -> RunConfig:
    """Apply typed updates, then ``key=value`` assignments, to a configuration.

    Args:
        cfg: Base configuration.
        assignments: ``key=value`` strings, as given to ``--set``.
        **updates: Already-typed values keyed by config key.

    Returns:
        The updated, re-validated configuration.

    Raises:
        ConfigError: On unknown keys or invalid values.
    """
    merged = dict(updates)
    for assignment in assignments:
        key, text = _split(assignment)
        merged[key] = _convert(key, text)
    unknown = sorted(set(merged) - set(_CONVERTERS))
    if unknown:
        msg = f"unknown key(s): {', '.join(unknown)}"
        raise ConfigError(msg)
    return _check(_apply(cfg, merged))


def _format(value: Any) -> str:
    if value is None:
        return "none"
    if isinstance(value, (RunKind, ThermalConvention)):
        return value.value
    if isinstance(value, tuple):
        return ",".join(str(item) for item in value) or "none"
    return repr(value) if isinstance(value, float) else str(value)


def emit_config(cfg: RunConfig) -> str:
    """Render the effective configuration in the format read by :func:`parse_config`.

    Floats are written with ``repr`` so they re-parse to identical values.
    """
    lines = ["# optotrap run configuration"]
    lines.extend(f"{item.name} = {_format(getattr(cfg, item.name))}" for item in dataclasses.fields(cfg))
    return "\n".join(lines) + "\n"
