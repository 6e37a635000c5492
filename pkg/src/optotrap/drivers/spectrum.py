"""Output entanglement spectrum driver."""

from __future__ import annotations

from typing import TYPE_CHECKING

from optotrap import spectral
from optotrap.base import BaseRunDriver
from optotrap.constants import hz_to_angular
from optotrap.types import RunKind

if TYPE_CHECKING:
    from optotrap.base import Row
    from optotrap.config import RunConfig


class SpectrumDriver(BaseRunDriver):
    """Logarithmic negativity of the output fields over a sideband-frequency grid.

    The grid is in Hz. The configuration must be stable; unlike the sweeps, an
    unstable trap aborts the run with the stability report.

    Columns:
        - omega_hz: Sideband frequency Ω/2π
        - E_N: Output logarithmic negativity
        - sigma: Σ of the output variance matrix
        - detV: det V of the output variance matrix
        - nu_minus: Smallest partially transposed symplectic eigenvalue
    """

    @property
    def run_kind(self) -> RunKind:
        """Return run kind 'spectrum'."""
        return RunKind.SPECTRUM

    @property
    def header(self) -> tuple[str, ...]:
        return ("omega_hz", "E_N", "sigma", "detV", "nu_minus")

    def rows(self, cfg: RunConfig) -> list[Row]:
        """Evaluate the spectrum on the configured grid.

        Raises:
            InstabilityError: If the trap is unstable.
            FrequencyPointError: If a grid point fails.
        """
        grid_hz = cfg.grid().values()
        series = spectral.output_entanglement_spectrum(
            cfg.system_params(),
            hz_to_angular(grid_hz),
            cfg.convention,
            workers=cfg.workers,
        )
        return [
            (float(f), float(e), float(s), float(d), float(n))
            for f, e, s, d, n in zip(grid_hz, series.values, series.sigma, series.det_v, series.nu_minus, strict=True)
        ]
