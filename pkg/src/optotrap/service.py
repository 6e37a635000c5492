"""Run service for managing experiment drivers.

This module provides the central RunService class that keeps a registry of
drivers keyed by run kind and dispatches configurations to them.
"""

from __future__ import annotations

from collections.abc import Mapping
from typing import TYPE_CHECKING

from optotrap.exceptions import DriverNotRegisteredError
from optotrap.types import RunKind

if TYPE_CHECKING:
    from typing import TextIO

    from optotrap.base import RunDriver
    from optotrap.config import RunConfig

__all__ = ("RunService",)


class RunService:
    """Registry of experiment drivers.

    Attributes:
        drivers: Registered drivers keyed by run kind.
    """

    def __init__(self, drivers: Mapping[RunKind, RunDriver] | None = None) -> None:
        """Initialize the service.

        Args:
            drivers: Optional mapping of run kinds to driver instances.
        """
        self.drivers: dict[RunKind, RunDriver] = dict(drivers) if drivers else {}

    def register(self, driver: RunDriver) -> None:
        """Register a driver under its run kind.

        Raises:
            ValueError: If a driver for the same run kind is already registered.
        """
        if driver.run_kind in self.drivers:
            msg = f"Driver for '{driver.run_kind.value}' is already registered"
            raise ValueError(msg)
        self.drivers[driver.run_kind] = driver

    def get_driver(self, run_kind: RunKind | str) -> RunDriver:
        """Retrieve the driver for a run kind.

        Raises:
            DriverNotRegisteredError: If no driver serves ``run_kind``.
        """
        try:
            kind = RunKind(run_kind)
        except ValueError:
            kind = None
        driver = self.drivers.get(kind) if kind is not None else None
        if driver is None:
            msg = f"No driver for run kind '{run_kind}'. Available run kinds: {', '.join(self.list_drivers())}"
            raise DriverNotRegisteredError(msg)
        return driver

    def list_drivers(self) -> list[str]:
        """Names of all registered run kinds."""
        return [kind.value for kind in self.drivers]

    def run(self, cfg: RunConfig, stream: TextIO) -> int:
        """Run the driver for ``cfg.run_kind``, writing CSV to ``stream``.

        Returns:
            Number of data rows written.
        """
        return self.get_driver(cfg.run_kind).run(cfg, stream)

    @classmethod
    def with_default_drivers(cls) -> RunService:
        """Create a service with every built-in driver registered."""
        from optotrap.drivers import (
            IntracavityDriver,
            SpectrumDriver,
            StabilityReportDriver,
            TemperatureSweepDriver,
            ThetaMapDriver,
        )

        service = cls()
        for driver in (
            SpectrumDriver(),
            TemperatureSweepDriver(),
            ThetaMapDriver(),
            IntracavityDriver(),
            StabilityReportDriver(),
        ):
            service.register(driver)
        return service
