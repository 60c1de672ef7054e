"""
Cross-validation metrics between two runs on the same grid.
"""
from dataclasses import asdict, dataclass
from typing import Union

import numpy as np

from ..core.fields import AnalyticField, SampledField
from ..exceptions import DomainError
from .metrics import measure_pulse

FieldLike = Union[SampledField, AnalyticField]


@dataclass(frozen=True)
class RunComparison:
    """
    :param l2_error: ‖a − b‖₂ / max(‖a‖₂, ‖b‖₂), symmetric in a and b
    :param peak_ratio: Peak intensity of a over that of b
    :param fwhm_ratio: Dominant sub-pulse FWHM of a over that of b
    """
    l2_error: float
    peak_ratio: float
    fwhm_ratio: float

    def to_dict(self) -> dict:
        return asdict(self)


def _samples(field: FieldLike) -> np.ndarray:
    if isinstance(field, AnalyticField):
        return field.e_complex.real
    return field.e_real


def compare_runs(a: FieldLike, b: FieldLike) -> RunComparison:
    """
    :raises DomainError: If the fields live on different grids
    :raises EmptyFieldError: If either field is identically zero
    """
    if not a.grid.matches(b.grid):
        raise DomainError(
            f"Cannot compare runs on different grids: {a.grid} vs {b.grid}"
        )
    x, y = _samples(a), _samples(b)
    scale = max(np.linalg.norm(x), np.linalg.norm(y))
    error = float(np.linalg.norm(x - y) / scale) if scale > 0 else 0.0
    metrics_a, metrics_b = measure_pulse(a), measure_pulse(b)
    return RunComparison(
        l2_error=error,
        peak_ratio=metrics_a.peak_intensity / metrics_b.peak_intensity,
        fwhm_ratio=metrics_a.intensity_fwhm / metrics_b.intensity_fwhm,
    )
