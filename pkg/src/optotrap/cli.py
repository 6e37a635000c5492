"""Command-line entry point.

Usage::

    optotrap <run-kind> [--config PATH] [--out PATH] [--grid MIN,MAX,POINTS,log|lin]
             [--convention paper|symmetrized|classical] [--set KEY=VALUE ...]
             [--workers N] [--emit-config] [--log-level LEVEL]

Settings are layered: defaults, then the config file, then ``--grid``,
``--convention``, ``--out`` and ``--workers``, then ``--set``.

Exit codes: 0 success, 1 other library error, 2 configuration error,
3 unstable trap, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import io
import logging
import sys
from pathlib import Path
from typing import TYPE_CHECKING, Any

from optotrap.__metadata__ import __version__
from optotrap.config import RunConfig, emit_config, parse_config, parse_grid, with_overrides
from optotrap.exceptions import ConfigError, InstabilityError, NumericalError, OptoTrapError
from optotrap.service import RunService
from optotrap.types import RunKind, ThermalConvention

if TYPE_CHECKING:
    from collections.abc import Sequence

__all__ = (
    "EXIT_CONFIG",
    "EXIT_ERROR",
    "EXIT_INSTABILITY",
    "EXIT_NUMERICAL",
    "EXIT_OK",
    "build_parser",
    "configure_logging",
    "load_config",
    "main",
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CONFIG = 2
EXIT_INSTABILITY = 3
EXIT_NUMERICAL = 4


def build_parser() -> argparse.ArgumentParser:
    """Create the argument parser."""
    parser = argparse.ArgumentParser(
        prog="optotrap",
        description="Entanglement and stability of a two-tone optically trapped mirror.",
    )
    parser.add_argument("run_kind", choices=[kind.value for kind in RunKind], help="experiment to run")
    parser.add_argument("--config", type=Path, help="key = value configuration file")
    parser.add_argument("--out", help="CSV output path (default: standard output)")
    parser.add_argument("--grid", help="sweep grid as MIN,MAX,POINTS,log|lin")
    parser.add_argument(
        "--convention",
        choices=[convention.value for convention in ThermalConvention],
        help="thermal noise convention",
    )
    parser.add_argument(
        "--set",
        dest="assignments",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override one config key (repeatable)",
    )
    parser.add_argument("--workers", type=int, help="worker threads for grid evaluation")
    parser.add_argument(
        "--emit-config",
        action="store_true",
        help="write the effective configuration instead of running",
    )
    parser.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="diagnostic verbosity on standard error",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return parser


def configure_logging(level: str = "WARNING") -> None:
    """Send library diagnostics to standard error."""
    logging.basicConfig(
        level=getattr(logging, level),
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def load_config(args: argparse.Namespace) -> RunConfig:
    """Build the effective configuration from parsed arguments.

    Raises:
        ConfigError: If the file cannot be read or any setting is invalid.
    """
    if args.config is None:
        cfg = RunConfig()
    else:
        try:
            text = args.config.read_text(encoding="utf-8")
        except OSError as exc:
            msg = f"cannot read config file {args.config}: {exc}"
            raise ConfigError(msg) from exc
        cfg = parse_config(text)

    updates: dict[str, Any] = {"run_kind": RunKind(args.run_kind)}
    if args.grid is not None:
        updates.update(parse_grid(args.grid))
    if args.convention is not None:
        updates["convention"] = ThermalConvention(args.convention)
    if args.out is not None:
        updates["output"] = args.out
    if args.workers is not None:
        if args.workers < 1:
            msg = f"--workers must be >= 1, got {args.workers}"
            raise ConfigError(msg)
        updates["workers"] = args.workers
    return with_overrides(cfg, args.assignments, **updates)


def _execute(cfg: RunConfig, *, emit: bool) -> None:
    service = RunService.with_default_drivers()
    if cfg.output is None:
        if emit:
            sys.stdout.write(emit_config(cfg))
        else:
            service.run(cfg, sys.stdout)
        return
    buffer = io.StringIO()
    if emit:
        buffer.write(emit_config(cfg))
    else:
        service.run(cfg, buffer)
    try:
        with Path(cfg.output).open("w", encoding="utf-8", newline="") as stream:
            stream.write(buffer.getvalue())
    except OSError as exc:
        msg = f"cannot write output file {cfg.output}: {exc}"
        raise ConfigError(msg) from exc


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line.

    Args:
        argv: Arguments without the program name; defaults to ``sys.argv[1:]``.

    Returns:
        Process exit code.
    """
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        cfg = load_config(args)
        logger.debug("Effective configuration: %s", cfg)
        _execute(cfg, emit=args.emit_config)
    except ConfigError as exc:
        sys.stderr.write(f"optotrap: configuration error: {exc}\n")
        return EXIT_CONFIG
    except InstabilityError as exc:
        sys.stderr.write(f"optotrap: {exc}\n")
        return EXIT_INSTABILITY
    except NumericalError as exc:
        sys.stderr.write(f"optotrap: numerical failure: {exc}\n")
        return EXIT_NUMERICAL
    except OptoTrapError as exc:
        sys.stderr.write(f"optotrap: {exc}\n")
        return EXIT_ERROR
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
