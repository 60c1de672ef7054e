from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

import pandas as pd


@dataclass
class ActionResult:
    action: str
    series: Dict[str, pd.DataFrame] = field(default_factory=dict)  # output name -> columns
    metrics: Dict[str, Any] = field(default_factory=dict)
    parameters: Dict[str, Any] = field(default_factory=dict)  # resolved physical inputs
    warnings: List[str] = field(default_factory=list)


@dataclass
class RunRecord:
    scenario: str
    scenario_hash: str
    action: str
    version: str
    parameters: Dict[str, Any]
    metrics: Dict[str, Any]
    files: List[str]
    started_at: str
    finished_at: str
    status: str = "ok"
    error_type: Optional[str] = None
    error: Optional[str] = None
    warnings: List[str] = field(default_factory=list)
    # Sweep position (None for single runs)
    axis: Optional[str] = None
    axis_value: Optional[float] = None

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class SweepResult:
    axis: str
    values: List[float]
    records: List[RunRecord]

    @property
    def failures(self) -> List[RunRecord]:
        return [record for record in self.records if not record.ok]

    @property
    def ok(self) -> bool:
        return not self.failures

    def table(self) -> pd.DataFrame:
        """One row per point: the axis value, status and every scalar metric."""
        rows = []
        for record in self.records:
            row: Dict[str, Any] = {self.axis: record.axis_value, "status": record.status}
            for section, values in record.metrics.items():
                if isinstance(values, dict):
                    for key, value in values.items():
                        if isinstance(value, (int, float, bool)) or value is None:
                            row[f"{section}.{key}"] = value
                elif isinstance(values, (int, float, bool)):
                    row[section] = values
            rows.append(row)
        return pd.DataFrame(rows)
