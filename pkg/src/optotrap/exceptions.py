"""Exception hierarchy for opto-mechanical computations.

This module defines all custom exceptions that can be raised while deriving
parameters, solving the linearized dynamics, evaluating Gaussian-state measures,
and running the command-line drivers.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from collections.abc import Mapping

    from optotrap.types import StabilityReport

__all__ = (
    "AnalyticDomainError",
    "ConfigError",
    "ConvergenceError",
    "DriverNotRegisteredError",
    "EigenSolverError",
    "FrequencyPointError",
    "IllConditionedSolveError",
    "InstabilityError",
    "InvalidMatrixError",
    "NumericalError",
    "OptoTrapError",
    "ParameterValidationError",
    "SingularConfigurationError",
    "StrongEntanglerWarning",
    "UnphysicalStateError",
)


class OptoTrapError(Exception):
    """Base exception for all optotrap errors.

    All custom exceptions in this library inherit from this base class,
    allowing consumers to catch every library failure with a single handler.
    """


class ParameterValidationError(OptoTrapError, ValueError):
    """Raised when physical parameters violate their invariants.

    Every violated invariant is reported, keyed by field name, so a caller can
    fix all of them in one pass.

    Attributes:
        violations: Mapping of field name to a description of the violation.
    """

    def __init__(self, violations: Mapping[str, str]) -> None:
        self.violations = dict(violations)
        details = "; ".join(f"{name}: {message}" for name, message in self.violations.items())
        super().__init__(f"Invalid parameters ({details})")


class SingularConfigurationError(OptoTrapError):
    """Raised when a closed-form expression is singular for the given parameters.

    Typical causes are a field with zero optical spring (ω_eff,j² = 0) entering a
    denominator, or a non-positive total spring where a resonance is required.
    """


class InstabilityError(OptoTrapError):
    """Raised when an operation requires a stable trap but the drift is unstable.

    Attributes:
        report: The stability report that failed, with eigenvalues and reasons.
    """

    def __init__(self, message: str, report: StabilityReport | None = None) -> None:
        self.report = report
        if report is not None and report.reasons:
            message = f"{message}: {', '.join(report.reasons)}"
        super().__init__(message)


class NumericalError(OptoTrapError):
    """Base exception for numerical failures.

    Raised when a computation cannot be completed to the required accuracy.
    The command-line tool maps this family to exit code 4.
    """


class EigenSolverError(NumericalError):
    """Raised when the eigenvalue solver fails to converge or returns non-finite values."""


class IllConditionedSolveError(NumericalError):
    """Raised when a linear solve is too ill-conditioned to trust.

    Attributes:
        omega: Sideband angular frequency (rad/s) of the offending solve.
        condition_number: Estimated condition number of the system matrix.
    """

    def __init__(self, omega: float, condition_number: float) -> None:
        self.omega = omega
        self.condition_number = condition_number
        super().__init__(f"Ill-conditioned solve at omega={omega:.6g} rad/s (condition number {condition_number:.3g})")


class ConvergenceError(NumericalError):
    """Raised when an adaptive quadrature exhausts its evaluation budget.

    Attributes:
        worst_element: Index pair of the element with the largest relative error.
        error: Relative error estimate of that element.
    """

    def __init__(self, message: str, worst_element: tuple[int, int], error: float) -> None:
        self.worst_element = worst_element
        self.error = error
        super().__init__(f"{message} (worst element {worst_element}, relative error {error:.3g})")


class UnphysicalStateError(NumericalError):
    """Raised when a variance matrix violates the uncertainty principle.

    For computed output states this is an internal-consistency failure: the
    linear dynamics preserve commutators, so an unphysical result means the
    numerics went wrong.
    """


class FrequencyPointError(NumericalError):
    """Raised when one point of a frequency grid fails.

    Attributes:
        omega: Sideband angular frequency (rad/s) of the failing point.
    """

    def __init__(self, omega: float, cause: Exception) -> None:
        self.omega = omega
        super().__init__(f"Evaluation failed at omega={omega:.6g} rad/s: {cause}")


class InvalidMatrixError(OptoTrapError, ValueError):
    """Raised when a matrix argument has the wrong shape or structure.

    Covers non-symmetric variance matrices and non-symplectic local transformations.
    """


class AnalyticDomainError(OptoTrapError, ValueError):
    """Raised when a closed-form expression is evaluated outside its domain."""


class ConfigError(OptoTrapError):
    """Raised when a run configuration cannot be parsed or is invalid.

    Attributes:
        line_number: 1-based line of the offending entry, when it came from a file.
    """

    def __init__(self, message: str, line_number: int | None = None) -> None:
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class DriverNotRegisteredError(OptoTrapError):
    """Raised when a run kind has no driver registered with the RunService."""


class StrongEntanglerWarning(UserWarning):
    """Issued when the strong-entangler limit is used with a moderate entangler strength."""
