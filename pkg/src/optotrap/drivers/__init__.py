"""Experiment drivers.

Each driver implements the RunDriver protocol and extends BaseRunDriver, turning
a run configuration into one CSV table.

Available Drivers:
    - SpectrumDriver: Output negativity spectrum over sideband frequency
    - TemperatureSweepDriver: Plateau negativity, ξ and Θ versus temperature
    - ThetaMapDriver: Closed-form and numerical plateau negativity versus Θ − 1
    - IntracavityDriver: Intra-cavity bipartite negativities with a method cross-check
    - StabilityReportDriver: Derived parameters, stability verdicts and eigenvalues

Example:
    ```python
    import sys

    from optotrap.config import RunConfig
    from optotrap.drivers import TemperatureSweepDriver
    from optotrap.types import RunKind

    cfg = RunConfig(run_kind=RunKind.TEMP_SWEEP)
    TemperatureSweepDriver().run(cfg, sys.stdout)
    ```
"""

from __future__ import annotations

from optotrap.drivers.intracavity import IntracavityDriver
from optotrap.drivers.spectrum import SpectrumDriver
from optotrap.drivers.stability import StabilityReportDriver
from optotrap.drivers.temp_sweep import TemperatureSweepDriver
from optotrap.drivers.theta_map import ThetaMapDriver

__all__ = (
    "IntracavityDriver",
    "SpectrumDriver",
    "StabilityReportDriver",
    "TemperatureSweepDriver",
    "ThetaMapDriver",
)
