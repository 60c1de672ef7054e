"""
Pulse and spectrum diagnostics of propagated fields.
"""
from .comparison import RunComparison, compare_runs
from .metrics import (
    PulseMetrics,
    count_oscillations,
    mean_frequency,
    measure_pulse,
    phase_advance,
    photon_number,
)
from .spectral import SpectralReport, measure_spectrum

__all__ = [
    "PulseMetrics",
    "RunComparison",
    "SpectralReport",
    "compare_runs",
    "count_oscillations",
    "mean_frequency",
    "measure_pulse",
    "phase_advance",
    "photon_number",
    "measure_spectrum",
]
