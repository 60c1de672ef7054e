"""
Units, grids and field representations shared by all modules.
"""
from .fields import AnalyticField, SampledField, Spectrum, check_windowed
from .grids import TimeGrid
from .sidebands import SidebandSet
from .pulses import WidthConvention, envelope_widths, fwhm, gaussian_pulse
from .transforms import (
    analytic_signal,
    delay_field,
    instantaneous_phase_frequency,
    inverse_spectrum,
    inverse_to_field,
    project_positive,
    spectral_derivative,
    spectrum_of,
    spectrum_of_samples,
)
from .units import Frequency, FrequencyUnit, convert_frequency

__all__ = [
    "AnalyticField",
    "Frequency",
    "FrequencyUnit",
    "SampledField",
    "SidebandSet",
    "Spectrum",
    "TimeGrid",
    "WidthConvention",
    "analytic_signal",
    "check_windowed",
    "convert_frequency",
    "delay_field",
    "envelope_widths",
    "fwhm",
    "gaussian_pulse",
    "instantaneous_phase_frequency",
    "inverse_spectrum",
    "inverse_to_field",
    "project_positive",
    "spectral_derivative",
    "spectrum_of",
    "spectrum_of_samples",
]
