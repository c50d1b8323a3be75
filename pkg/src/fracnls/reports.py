"""Report record shared by the inequality probes and empirical sweeps."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

__all__ = ["EstimateReport", "SCHEMA_VERSION"]

SCHEMA_VERSION = "fracnls-report-v1"


@dataclass
class EstimateReport:
    """Outcome of one empirical inequality probe.

    c_emp is the measured constant (sup of the bounded ratio), arg_max the
    location where it was attained, trend_slope the fitted log-log growth
    against the truncation radius or sweep variable.  ``passed`` requires
    trend_slope <= slope_tol.
    """

    inequality_id: str
    params: dict
    c_emp: float
    arg_max: dict
    truncation_radius: float
    trend_slope: float
    slope_tol: float = 0.05
    passed: bool = False
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.c_emp < 0:
            raise ValueError("c_emp must be nonnegative")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["schema"] = SCHEMA_VERSION
        return d

    def to_json(self, path=None) -> str:
        text = json.dumps(self.to_dict(), indent=2, sort_keys=True)
        if path is not None:
            with open(path, "w") as fh:
                fh.write(text + "\n")
        return text

    def csv_row(self) -> str:
        return ",".join(
            str(v)
            for v in (
                self.inequality_id,
                self.c_emp,
                self.trend_slope,
                self.slope_tol,
                int(self.passed),
                self.truncation_radius,
            )
        )

    CSV_HEADER = "inequality_id,c_emp,trend_slope,slope_tol,passed,truncation_radius"
