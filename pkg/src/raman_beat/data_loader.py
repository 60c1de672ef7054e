from pathlib import Path
from typing import Optional, Union

import numpy as np
import pandas as pd

from .core.fields import SampledField
from .core.grids import TimeGrid
from .exceptions import ValidationError

FS = 1e-15
TIME_COLUMN = "tau_fs"
FIELD_COLUMNS = ("output_V_per_m", "field_V_per_m", "input_V_per_m")


class FieldDataLoader:
    """
    Loads a sampled real field from CSV.

    The file needs a ``tau_fs`` column on a uniform grid and one field column
    in V/m. Files written by the ``field`` output load directly; the output
    column is preferred over the input column.
    """

    def __init__(self, csv_path: Union[str, Path], column: Optional[str] = None):
        self.csv_path = Path(csv_path)
        self.column = column

    def load_field(self) -> SampledField:
        """
        :raises ValidationError: For a missing file, missing columns or a non-uniform grid
        """
        try:
            frame = pd.read_csv(self.csv_path)
        except FileNotFoundError:
            raise ValidationError(f"Field file not found: {self.csv_path}")
        except (pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
            raise ValidationError(f"Field file {self.csv_path} is not a readable CSV: {exc}")

        if TIME_COLUMN not in frame.columns:
            raise ValidationError(f"Field file {self.csv_path} lacks a '{TIME_COLUMN}' column")
        column = self.column or self._field_column(frame)
        if column not in frame.columns:
            raise ValidationError(f"Field file {self.csv_path} lacks a '{column}' column")

        tau = self._parse_column(frame, TIME_COLUMN) * FS
        values = self._parse_column(frame, column)
        if tau.size < 2:
            raise ValidationError(f"Field file {self.csv_path} needs at least two samples")
        steps = np.diff(tau)
        dt = float(np.mean(steps))
        if dt <= 0 or np.max(np.abs(steps - dt)) > 1e-6 * dt:
            raise ValidationError(f"Field file {self.csv_path} is not on a uniform ascending grid")
        return SampledField(TimeGrid(float(tau[0]), dt, tau.size), values)

    def _field_column(self, frame: pd.DataFrame) -> str:
        for name in FIELD_COLUMNS:
            if name in frame.columns:
                return name
        others = [c for c in frame.columns if c != TIME_COLUMN]
        if not others:
            raise ValidationError(f"Field file {self.csv_path} has no field column")
        return others[0]

    def _parse_column(self, frame: pd.DataFrame, column: str) -> np.ndarray:
        values = pd.to_numeric(frame[column], errors="coerce").to_numpy(dtype=float)
        if not np.all(np.isfinite(values)):
            raise ValidationError(f"Column '{column}' of {self.csv_path} holds non-numeric values")
        return values
