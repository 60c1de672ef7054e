"""
Probe pulse synthesis and envelope width measures.
"""
import math
from enum import Enum
from typing import Union

import numpy as np

from ..exceptions import DomainError
from .fields import SampledField
from .grids import TimeGrid
from .units import Frequency


class WidthConvention(str, Enum):
    """How a Gaussian pulse width is measured."""
    INTENSITY_FWHM = "intensity_fwhm"
    FIELD_FWHM = "field_fwhm"
    ONE_OVER_E = "one_over_e"  # field half-width at 1/e


def envelope_rate(width: float, kind: Union[WidthConvention, str]) -> float:
    """Coefficient c of the field envelope exp(−c·τ²) for a width in the given convention."""
    if width <= 0:
        raise DomainError(f"Pulse width must be positive, got {width}")
    kind = WidthConvention(kind)
    if kind is WidthConvention.INTENSITY_FWHM:
        return 2.0 * math.log(2.0) / width**2
    if kind is WidthConvention.FIELD_FWHM:
        return 4.0 * math.log(2.0) / width**2
    return 1.0 / width**2


def gaussian_pulse(
    grid: TimeGrid,
    carrier: Frequency,
    width: float,
    peak_time: float = 0.0,
    amplitude: float = 1.0,
    width_kind: Union[WidthConvention, str] = WidthConvention.INTENSITY_FWHM,
    phase: float = 0.0,
) -> SampledField:
    """
    Gaussian probe E(τ) = A·exp(−c(τ−τ_p)²)·cos(ω₀τ + phase).

    The carrier phase is referenced to τ = 0, so pulses injected at different
    peak times sample the same carrier wave.
    """
    tau = grid.tau
    rate = envelope_rate(width, width_kind)
    envelope = amplitude * np.exp(-rate * (tau - peak_time) ** 2)
    return SampledField(grid, envelope * np.cos(carrier.value * tau + phase))


def fwhm(tau: np.ndarray, profile: np.ndarray) -> float:
    """
    Full width at half maximum of a non-negative profile, with linear
    interpolation of the outermost half-maximum crossings.
    """
    profile = np.asarray(profile, dtype=float)
    peak = profile.max()
    if peak <= 0:
        raise DomainError("Cannot measure the width of an all-zero profile")
    above = np.nonzero(profile >= 0.5 * peak)[0]
    first, last = above[0], above[-1]
    half = 0.5 * peak

    def crossing(i_out: int, i_in: int) -> float:
        if i_out < 0 or i_out >= profile.size:
            return tau[i_in]
        y0, y1 = profile[i_out], profile[i_in]
        return tau[i_out] + (half - y0) / (y1 - y0) * (tau[i_in] - tau[i_out])

    return float(crossing(last + 1, last) - crossing(first - 1, first))


def envelope_widths(envelope: np.ndarray, grid: TimeGrid) -> dict:
    """
    Both width measures of a field envelope |ℰ|.

    :return: {"intensity_fwhm": ..., "field_fwhm": ...} in seconds
    """
    tau = grid.tau
    return {
        "intensity_fwhm": fwhm(tau, envelope**2),
        "field_fwhm": fwhm(tau, envelope),
    }
