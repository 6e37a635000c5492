"""Frequency-independent output entanglement versus thermal degradation."""

from __future__ import annotations

import dataclasses
import logging
from typing import TYPE_CHECKING

from optotrap import analytic, model, spectral
from optotrap.base import BaseRunDriver
from optotrap.exceptions import SingularConfigurationError
from optotrap.types import RunKind

if TYPE_CHECKING:
    from optotrap.base import Row
    from optotrap.config import RunConfig

logger = logging.getLogger(__name__)

PLATEAU_FRACTION = 0.01
"""Ω/ω_eff of the numerical column at Θ = 1."""


class ThetaMapDriver(BaseRunDriver):
    """Closed-form and numerical plateau negativity over a grid of Θ − 1.

    The optics stay fixed; each Θ is reached by back-solving the temperature.
    The numerical column is the output negativity at Ω = ω_eff/(100·Θ); the
    thermal correction to the plateau grows as (Θ·Ω/ω_eff)², so the band
    narrows as Θ grows.
    """

    @property
    def run_kind(self) -> RunKind:
        return RunKind.THETA_MAP

    @property
    def header(self) -> tuple[str, ...]:
        return ("theta_minus_1", "E_N_analytic", "E_N_numeric")

    def rows(self, cfg: RunConfig) -> list[Row]:
        base = cfg.system_params()
        grid = cfg.grid().values()
        try:
            xi, _ = model.entangler_parameters(base)
        except SingularConfigurationError as exc:
            logger.warning("Theta map undefined for this configuration: %s", exc)
            return [(float(x), None, None) for x in grid]
        if not self.is_stable_point(base):
            return [(float(x), None, None) for x in grid]

        def row(theta_minus_1: float) -> Row:
            theta = 1.0 + float(theta_minus_1)
            params = dataclasses.replace(base, temperature=analytic.temperature_for_theta(base, theta))
            return (
                float(theta_minus_1),
                analytic.output_log_negativity_analytic(xi, theta),
                spectral.plateau_log_negativity(params, cfg.convention, fraction=PLATEAU_FRACTION / theta),
            )

        return self.evaluate(row, grid, cfg.workers)
