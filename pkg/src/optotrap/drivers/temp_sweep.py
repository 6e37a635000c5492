"""Low-frequency output entanglement versus temperature."""

from __future__ import annotations

import dataclasses
from typing import TYPE_CHECKING

from optotrap import model, spectral
from optotrap.base import BaseRunDriver
from optotrap.types import RunKind

if TYPE_CHECKING:
    from optotrap.base import Row
    from optotrap.config import RunConfig


class TemperatureSweepDriver(BaseRunDriver):
    """Plateau negativity at Ω = ω_eff/100 for each temperature on the grid (K).

    Unstable points keep their row with an empty E_N field. ξ and Θ are empty
    where they are undefined.
    """

    @property
    def run_kind(self) -> RunKind:
        return RunKind.TEMP_SWEEP

    @property
    def header(self) -> tuple[str, ...]:
        return ("temperature_k", "E_N_low_freq", "xi", "theta")

    def rows(self, cfg: RunConfig) -> list[Row]:
        base = cfg.system_params()
        stable = self.is_stable_point(base)

        def row(temperature: float) -> Row:
            params = dataclasses.replace(base, temperature=float(temperature))
            derived = model.derived_params(params)
            value = spectral.plateau_log_negativity(params, cfg.convention) if stable else None
            return (float(temperature), value, derived.xi, derived.theta)

        return self.evaluate(row, cfg.grid().values(), cfg.workers)
