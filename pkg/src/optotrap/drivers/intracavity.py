"""Intra-cavity bipartite entanglement versus temperature."""

from __future__ import annotations

import dataclasses
import logging
from typing import TYPE_CHECKING

from optotrap import gaussian, spectral, steadystate
from optotrap.base import BaseRunDriver
from optotrap.types import Partition, RunKind

if TYPE_CHECKING:
    from optotrap.base import Row
    from optotrap.config import RunConfig

logger = logging.getLogger(__name__)

_PARTITIONS = (Partition.MIRROR_CARRIER, Partition.MIRROR_SUBCARRIER, Partition.CARRIER_SUBCARRIER)


class IntracavityDriver(BaseRunDriver):
    """Steady-state entanglement of each pair of intra-cavity subsystems.

    The covariance comes from the Lyapunov equation. On the rows selected by
    ``crosscheck_rows`` it is compared with the frequency-integrated covariance,
    reporting the largest normalized elementwise deviation.
    """

    @property
    def run_kind(self) -> RunKind:
        return RunKind.INTRACAVITY

    @property
    def header(self) -> tuple[str, ...]:
        return (
            "temperature_k",
            "E_N_mirror_carrier",
            "E_N_mirror_subcarrier",
            "E_N_carrier_subcarrier",
            "lyapunov_residual",
            "crosscheck_maxdev",
        )

    def rows(self, cfg: RunConfig) -> list[Row]:
        base = cfg.system_params()
        grid = cfg.grid().values()
        checked = set()
        for index in cfg.crosscheck_rows:
            if -len(grid) <= index < len(grid):
                checked.add(index % len(grid))
            else:
                logger.warning("Ignoring cross-check row %d outside a %d-row sweep", index, len(grid))
        if not self.is_stable_point(base):
            return [(float(t), None, None, None, None, None) for t in grid]

        def row(item: tuple[int, float]) -> Row:
            index, temperature = item
            params = dataclasses.replace(base, temperature=float(temperature))
            cov = steadystate.steady_state_covariance(params, cfg.convention)
            values = [gaussian.log_negativity(gaussian.reduce_bipartition(cov, part)) for part in _PARTITIONS]
            deviation = None
            if index in checked:
                integrated = spectral.integrate_covariance(params, cfg.convention)
                deviation = steadystate.covariance_deviation(cov, integrated)
            return (float(temperature), *values, cov.residual, deviation)

        return self.evaluate(row, list(enumerate(grid)), cfg.workers)
