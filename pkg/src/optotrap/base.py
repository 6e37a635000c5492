"""Base classes and protocols for experiment drivers.

A driver turns a :class:`~optotrap.config.RunConfig` into rows of a CSV table.
This module defines the driver interface and a base implementation that owns the
shared behaviour: ordered (optionally parallel) grid evaluation, per-point
stability checks, and locale-independent CSV output.
"""

from __future__ import annotations

import csv
import logging
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from typing import TYPE_CHECKING, Protocol, TypeVar, runtime_checkable

from optotrap import model

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable, Sequence
    from typing import TextIO

    from optotrap.config import RunConfig
    from optotrap.types import RunKind, SystemParams

__all__ = (
    "BaseRunDriver",
    "Cell",
    "Row",
    "RunDriver",
)

logger = logging.getLogger(__name__)

Cell = float | int | bool | str | None
"""One CSV value; None is written as an empty field."""

Row = tuple[Cell, ...]

_T = TypeVar("_T")
_R = TypeVar("_R")


@runtime_checkable
class RunDriver(Protocol):
    """Protocol defining the interface for experiment drivers.

    Every driver registered with the RunService must implement this interface.
    """

    @property
    def run_kind(self) -> RunKind:
        """Run kind this driver serves (e.g. ``spectrum``)."""
        ...

    @property
    def header(self) -> tuple[str, ...]:
        """CSV column names."""
        ...

    def rows(self, cfg: RunConfig) -> list[Row]:
        """Compute the table for a configuration.

        Args:
            cfg: Validated run configuration.

        Returns:
            One row per output line, in grid order.
        """
        ...

    def run(self, cfg: RunConfig, stream: TextIO) -> int:
        """Compute the table and write it as CSV.

        Args:
            cfg: Validated run configuration.
            stream: Text stream receiving the CSV.

        Returns:
            Number of data rows written.
        """
        ...


class BaseRunDriver(ABC):
    """Abstract base class providing common driver functionality.

    Concrete drivers declare their run kind and header and implement
    :meth:`rows`; writing, ordering and parallelism live here.
    """

    @property
    @abstractmethod
    def run_kind(self) -> RunKind:
        """Run kind this driver serves."""
        ...

    @property
    @abstractmethod
    def header(self) -> tuple[str, ...]:
        """CSV column names."""
        ...

    @abstractmethod
    def rows(self, cfg: RunConfig) -> list[Row]:
        """Compute the table for a configuration."""
        ...

    @staticmethod
    def evaluate(func: Callable[[_T], _R], items: Iterable[_T], workers: int = 1) -> list[_R]:
        """Map ``func`` over ``items``, keeping input order.

        With ``workers > 1`` the calls run on a thread pool; results are still
        collected in input order, so output never depends on scheduling.
        """
        if workers <= 1:
            return [func(item) for item in items]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(func, items))

    @staticmethod
    def is_stable_point(params: SystemParams) -> bool:
        """Eigenvalue stability of one sweep point; unstable points are logged."""
        report = model.is_stable(model.drift_matrix(params))
        if not report.stable:
            logger.warning("Skipping unstable point: %s", ", ".join(report.reasons))
        return report.stable

    @staticmethod
    def format_cell(value: Cell, digits: int = 12) -> str:
        """Render one value; floats use ``digits`` significant digits."""
        if value is None:
            return ""
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, float):
            return format(value, f".{digits}g")
        return str(value)

    def write_csv(self, rows: Sequence[Row], stream: TextIO, digits: int = 12) -> int:
        """Write the header and ``rows`` with ``\\n`` line endings.

        Returns:
            Number of data rows written.
        """
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(self.header)
        for row in rows:
            writer.writerow([self.format_cell(value, digits) for value in row])
        return len(rows)

    def run(self, cfg: RunConfig, stream: TextIO) -> int:
        """Compute the table and write it as CSV.

        Args:
            cfg: Validated run configuration.
            stream: Text stream receiving the CSV.

        Returns:
            Number of data rows written.
        """
        logger.info("Running %s", self.run_kind.value)
        written = self.write_csv(self.rows(cfg), stream, cfg.digits)
        logger.info("Wrote %d %s row(s)", written, self.run_kind.value)
        return written
