"""
Temporal pulse diagnostics.
"""
import logging
from dataclasses import asdict, dataclass
from typing import Optional, Tuple, Union

import numpy as np
from scipy import signal
from scipy.constants import c as SPEED_OF_LIGHT
from scipy.constants import epsilon_0, hbar

from ..core.fields import AnalyticField, SampledField
from ..core.transforms import analytic_signal, instantaneous_phase_frequency
from ..exceptions import DomainError, EmptyFieldError

logger = logging.getLogger(__name__)

SUBPULSE_LEVEL = 0.5

FieldLike = Union[SampledField, AnalyticField]


def _analytic(field: FieldLike) -> AnalyticField:
    if isinstance(field, AnalyticField):
        return field
    return analytic_signal(field)


def _real(field: FieldLike) -> np.ndarray:
    if isinstance(field, AnalyticField):
        return field.e_complex.real
    return field.e_real


@dataclass(frozen=True)
class PulseMetrics:
    """Diagnostics of a pulse or pulse train; times in s, fields in V/m."""
    peak_amplitude: float
    peak_intensity: float  # cycle-averaged |ℰ|², V²/m²
    peak_time: float
    intensity_fwhm: float  # of the dominant sub-pulse
    centroid: float
    energy: float  # fluence ε₀c∫E²dτ, J/m²
    subpulse_count: int
    train_period: Optional[float] = None
    compression_factor: Optional[float] = None

    def to_dict(self) -> dict:
        return asdict(self)


def _refine_peak(tau: np.ndarray, values: np.ndarray, index: int) -> float:
    """Parabolic interpolation of a sampled maximum."""
    if index <= 0 or index >= values.size - 1:
        return float(tau[index])
    left, centre, right = values[index - 1], values[index], values[index + 1]
    curvature = left - 2.0 * centre + right
    if curvature == 0:
        return float(tau[index])
    offset = 0.5 * (left - right) / curvature
    return float(tau[index] + offset * (tau[1] - tau[0]))


def measure_pulse(field: FieldLike, reference: Optional[FieldLike] = None) -> PulseMetrics:
    """
    Measure a windowed field from its cycle-averaged intensity |ℰ|².

    Sub-pulses are the local maxima above half the global peak; the width is
    the full width at half maximum of the strongest one.

    :param field: Real or analytic field
    :param reference: Optional input field; sets compression_factor = FWHM_ref/FWHM
    :raises EmptyFieldError: For an all-zero field
    :raises WindowingError: If a real field has not decayed at the grid edges
    """
    if not np.any(_real(field)) and (
        not isinstance(field, AnalyticField) or not np.any(field.e_complex)
    ):
        raise EmptyFieldError("Pulse metrics of an all-zero field are undefined")
    analytic = _analytic(field)
    tau = analytic.tau
    dt = analytic.grid.dt
    intensity = analytic.intensity
    peak = float(intensity.max())

    peaks, _ = signal.find_peaks(intensity, height=SUBPULSE_LEVEL * peak)
    if peaks.size == 0:
        peaks = np.array([int(np.argmax(intensity))])
    dominant = peaks[int(np.argmax(intensity[peaks]))]
    _, left_bases, right_bases = signal.peak_prominences(intensity, [dominant])
    widths, _, _, _ = signal.peak_widths(
        intensity,
        [dominant],
        rel_height=0.5,
        prominence_data=(np.array([intensity[dominant]]), left_bases, right_bases),
    )
    width = float(widths[0] * dt)

    times = np.array([_refine_peak(tau, intensity, i) for i in peaks])
    period = float(np.median(np.diff(times))) if times.size >= 2 else None

    real = _real(field)
    metrics = PulseMetrics(
        peak_amplitude=float(np.sqrt(peak)),
        peak_intensity=peak,
        peak_time=_refine_peak(tau, intensity, dominant),
        intensity_fwhm=width,
        centroid=float(np.sum(tau * intensity) / np.sum(intensity)),
        energy=float(epsilon_0 * SPEED_OF_LIGHT * np.sum(real**2) * dt),
        subpulse_count=int(peaks.size),
        train_period=period,
    )
    if reference is not None:
        base = measure_pulse(reference)
        metrics = PulseMetrics(**{**asdict(metrics), "compression_factor": base.intensity_fwhm / width})
    logger.debug(f"Pulse metrics: FWHM={width:.3e} s, {peaks.size} sub-pulses")
    return metrics


def photon_number(
    field: FieldLike,
    omega0: Optional[float] = None,
    omega_osc: Optional[np.ndarray] = None,
) -> float:
    """
    Photon number per unit area (cε₀/2ħ)∫E²/ω dτ.

    :param omega0: Constant carrier frequency, rad/s
    :param omega_osc: Local oscillation frequency per sample, rad/s (overrides omega0)
    :raises DomainError: If neither frequency is given
    """
    real = _real(field)
    grid = field.grid
    if omega_osc is not None:
        weight = 1.0 / np.asarray(omega_osc, dtype=float)
    elif omega0 is not None:
        weight = 1.0 / float(omega0)
    else:
        raise DomainError("photon_number needs omega0 or omega_osc")
    return float(SPEED_OF_LIGHT * epsilon_0 / (2.0 * hbar) * np.sum(real**2 * weight) * grid.dt)


def mean_frequency(field: FieldLike) -> float:
    """Intensity-weighted mean of the instantaneous frequency −d(arg ℰ)/dτ, rad/s."""
    analytic = _analytic(field)
    intensity = analytic.intensity
    total = intensity.sum()
    if total == 0:
        raise EmptyFieldError("Mean frequency of an all-zero field is undefined")
    return float(np.sum(instantaneous_phase_frequency(analytic) * intensity) / total)


def phase_advance(field: FieldLike, start: float, stop: float) -> float:
    """
    Oscillation phase −Δarg ℰ accumulated between two times, rad.

    Equals ∫ω_osc dτ over [start, stop]. The unwrapped phase is interpolated
    linearly between samples.
    """
    analytic = _analytic(field)
    phase = np.unwrap(np.angle(analytic.e_complex))
    ends = np.interp([start, stop], analytic.tau, phase)
    return float(ends[0] - ends[1])


def count_oscillations(
    field: FieldLike,
    threshold: float = 1e-6,
    interval: Optional[Tuple[float, float]] = None,
) -> float:
    """
    Half the number of zero crossings, ignoring samples below ``threshold`` of the peak.

    A crossing counts only when the field passes from above +threshold·peak to
    below −threshold·peak or back.

    :param interval: Count only crossings between these times; the peak stays global
    """
    real = _real(field)
    peak = np.max(np.abs(real))
    if peak == 0:
        return 0.0
    if interval is not None:
        tau = field.tau
        real = real[(tau >= interval[0]) & (tau <= interval[1])]
    significant = real[np.abs(real) > threshold * peak]
    signs = np.sign(significant)
    return 0.5 * int(np.count_nonzero(signs[1:] != signs[:-1]))
