"""
Closed-form beat of a probe with a prepared coherence in a dispersionless medium.
"""
from .beat import (
    BeatParameters,
    SidebandOrders,
    coupling_alpha,
    dip_times,
    gain_profile,
    instantaneous_frequency,
    inverse_time_remap,
    local_remap,
    local_time,
    peak_times,
    reduced_time,
    sideband_orders,
    susceptibility_in_local_time,
    susceptibility_profile,
    time_remap,
)
from .solution import (
    ConservationReport,
    ConservedPair,
    chirp_approximation,
    conservation_report,
    gain_extremes,
    phase_modulation_approximation,
    propagate_dispersionless,
    reduced_rhs,
    support_interval,
)
from .spectra import BesselMode, BesselSpectrum, FourierSeries, bessel_spectrum, fourier_G

__all__ = [
    "BeatParameters",
    "BesselMode",
    "BesselSpectrum",
    "ConservationReport",
    "ConservedPair",
    "FourierSeries",
    "SidebandOrders",
    "bessel_spectrum",
    "chirp_approximation",
    "conservation_report",
    "coupling_alpha",
    "dip_times",
    "fourier_G",
    "gain_extremes",
    "gain_profile",
    "instantaneous_frequency",
    "inverse_time_remap",
    "local_remap",
    "local_time",
    "peak_times",
    "phase_modulation_approximation",
    "propagate_dispersionless",
    "reduced_rhs",
    "reduced_time",
    "sideband_orders",
    "support_interval",
    "susceptibility_in_local_time",
    "susceptibility_profile",
    "time_remap",
]
