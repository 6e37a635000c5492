"""Stability report driver."""

from __future__ import annotations

import math
from typing import TYPE_CHECKING

from optotrap import model
from optotrap.base import BaseRunDriver
from optotrap.constants import angular_to_hz
from optotrap.types import RunKind

if TYPE_CHECKING:
    from optotrap.base import Row
    from optotrap.config import RunConfig


class StabilityReportDriver(BaseRunDriver):
    """Derived trap parameters, both stability verdicts and the drift eigenvalues.

    Written as ``quantity,value`` pairs. Undefined quantities have an empty value.
    """

    @property
    def run_kind(self) -> RunKind:
        return RunKind.STABILITY_REPORT

    @property
    def header(self) -> tuple[str, ...]:
        return ("quantity", "value")

    def rows(self, cfg: RunConfig) -> list[Row]:
        params = cfg.system_params()
        drift = model.drift_matrix(params)
        report = model.is_stable(drift)
        derived = drift.derived or model.derived_params(params)
        omega_eff = derived.omega_eff
        suppression = params.omega_m**2 / derived.omega_eff_sq if derived.omega_eff_sq > 0 else None
        rows: list[Row] = [
            ("stable", report.stable),
            ("quasi_static_stable", report.quasi_static_stable),
            ("alpha_1", derived.alpha_1),
            ("alpha_2", derived.alpha_2),
            ("coupling_1", derived.coupling_1),
            ("coupling_2", derived.coupling_2),
            ("omega_eff_sq_1", derived.omega_eff_sq_1),
            ("omega_eff_sq_2", derived.omega_eff_sq_2),
            ("omega_eff_sq", derived.omega_eff_sq),
            ("omega_eff_hz", None if math.isnan(omega_eff) else angular_to_hz(omega_eff)),
            ("gamma_eff_1", derived.gamma_eff_1),
            ("gamma_eff_2", derived.gamma_eff_2),
            ("gamma_eff", derived.gamma_eff),
            ("xi", derived.xi),
            ("theta", derived.theta),
            ("suppression_factor", suppression),
        ]
        for index, eigenvalue in enumerate(report.eigenvalues):
            rows.append((f"eigenvalue_{index}_real", float(eigenvalue.real)))
            rows.append((f"eigenvalue_{index}_imag", float(eigenvalue.imag)))
        rows.extend(("reason", reason) for reason in report.reasons)
        return rows
