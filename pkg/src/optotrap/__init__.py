"""optotrap - entanglement and stability of a two-tone optically trapped mirror.

This library models a suspended cavity mirror held in an optical trap by a
detuned carrier and subcarrier. It derives the optical spring and damping,
decides trap stability, and computes the entanglement between the two output
fields and between the mirror and the intra-cavity fields, both in closed form
and numerically.
"""

from __future__ import annotations

from optotrap.__metadata__ import __project__, __version__
from optotrap.base import BaseRunDriver, RunDriver
from optotrap.config import GridSpec, RunConfig, emit_config, parse_config
from optotrap.exceptions import (
    AnalyticDomainError,
    ConfigError,
    ConvergenceError,
    DriverNotRegisteredError,
    EigenSolverError,
    FrequencyPointError,
    IllConditionedSolveError,
    InstabilityError,
    InvalidMatrixError,
    NumericalError,
    OptoTrapError,
    ParameterValidationError,
    SingularConfigurationError,
    StrongEntanglerWarning,
    UnphysicalStateError,
)
from optotrap.service import RunService
from optotrap.types import (
    CovarianceMatrix6,
    DerivedParams,
    DriftMatrix,
    InputSpectralDensity,
    Partition,
    RunKind,
    SpectrumSeries,
    StabilityReport,
    SystemParams,
    ThermalConvention,
    VarianceMatrix4,
)

__all__ = (
    # Exceptions
    "AnalyticDomainError",
    # Drivers and service
    "BaseRunDriver",
    "ConfigError",
    "ConvergenceError",
    # Data types
    "CovarianceMatrix6",
    "DerivedParams",
    "DriftMatrix",
    "DriverNotRegisteredError",
    "EigenSolverError",
    "FrequencyPointError",
    # Configuration
    "GridSpec",
    "IllConditionedSolveError",
    "InputSpectralDensity",
    "InstabilityError",
    "InvalidMatrixError",
    "NumericalError",
    "OptoTrapError",
    "ParameterValidationError",
    "Partition",
    "RunConfig",
    "RunDriver",
    "RunKind",
    "RunService",
    "SingularConfigurationError",
    "SpectrumSeries",
    "StabilityReport",
    "StrongEntanglerWarning",
    "SystemParams",
    "ThermalConvention",
    "UnphysicalStateError",
    "VarianceMatrix4",
    # Metadata
    "__project__",
    "__version__",
    "emit_config",
    "parse_config",
)
