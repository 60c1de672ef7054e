"""
Writers for run outputs: 1-D series as CSV or JSON, records and metrics as JSON.

CSV files are UTF-8 with LF line endings and a header row; floats are written
with 17 significant digits so they read back exactly.
"""
import json
import logging
from pathlib import Path
from typing import Any, Literal, Union

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


def to_jsonable(value: Any) -> Any:
    """Convert numpy scalars, arrays and complex numbers for json.dumps."""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": float(value.real), "im": float(value.imag)}
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        value = float(value)
    if isinstance(value, float) and not np.isfinite(value):
        return None if np.isnan(value) else ("inf" if value > 0 else "-inf")
    return value


class ResultExporter:
    """
    Writes run outputs under one directory.

    Usage:
        exporter = ResultExporter("out/fig2", fmt="csv")
        exporter.write_series("field", frame)
        exporter.write_json("record", record.to_dict())
    """

    def __init__(self, out_dir: Union[str, Path], fmt: Literal["csv", "json"] = "csv"):
        self.out_dir = Path(out_dir)
        self.fmt = fmt

    def _path(self, name: str, suffix: str) -> Path:
        self.out_dir.mkdir(parents=True, exist_ok=True)
        return self.out_dir / f"{name}.{suffix}"

    def write_series(self, name: str, frame: pd.DataFrame) -> Path:
        if self.fmt == "json":
            return self.write_json(name, {col: frame[col].tolist() for col in frame.columns})
        path = self._path(name, "csv")
        frame.to_csv(
            path,
            index=False,
            float_format=FLOAT_FORMAT,
            lineterminator="\n",
            encoding="utf-8",
        )
        logger.debug(f"Wrote {len(frame)} rows to {path}")
        return path

    def write_json(self, name: str, payload: Any) -> Path:
        path = self._path(name, "json")
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            json.dump(to_jsonable(payload), f, indent=2, ensure_ascii=False)
            f.write("\n")
        logger.debug(f"Wrote {path}")
        return path
