"""
Exact dispersionless solution and its conservation checks.

Grids handed to this module are read in reduced local time: the input field is
E_in(s) sampled at s = grid.tau and the output is E_out(η) sampled at η = grid.tau.
"""
import logging
import math
from dataclasses import asdict, dataclass
from typing import Dict, Optional, Tuple, Union

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT
from scipy.constants import epsilon_0, hbar
from scipy.interpolate import PchipInterpolator

from ..analysis.metrics import count_oscillations, phase_advance
from ..core.fields import EDGE_DECAY, SampledField
from ..core.grids import TimeGrid
from ..core.transforms import spectral_derivative
from ..core.units import Frequency
from ..exceptions import CoverageError, DomainError
from .beat import (
    BeatParameters,
    gain_profile,
    instantaneous_frequency,
    inverse_time_remap,
    time_remap,
)

logger = logging.getLogger(__name__)

PERIOD_TOLERANCE = 1e-9
# well above the crossing threshold of count_oscillations
MATCHED_LEVEL = 1e-3


def _value(omega: Union[Frequency, float]) -> float:
    return float(omega.value if isinstance(omega, Frequency) else omega)


def _periods_in_window(grid: TimeGrid, p: BeatParameters) -> Optional[int]:
    """Number of modulation periods in the grid window, if it is an integer."""
    ratio = grid.window / p.period
    periods = round(ratio)
    if periods >= 1 and abs(ratio - periods) <= PERIOD_TOLERANCE * ratio:
        return periods
    return None


def _interpolant(field: SampledField, periodic: bool) -> PchipInterpolator:
    tau = field.grid.tau
    values = field.e_real
    if periodic:
        window = field.grid.window
        tau = np.concatenate([tau - window, tau, tau + window])
        values = np.tile(values, 3)
    return PchipInterpolator(tau, values, extrapolate=False)


def propagate_dispersionless(
    input_field: SampledField,
    p: BeatParameters,
    output_grid: Optional[TimeGrid] = None,
) -> SampledField:
    """
    Exact output E_out(η) = E_in(s(η))·G(η) of a dispersionless medium.

    On grids whose window holds an integer number of modulation periods the
    input is treated as periodic; otherwise every s(η) must fall on the input grid.

    :param input_field: E_in over input time s
    :param p: Beat parameters at the output plane
    :param output_grid: η grid (defaults to the input grid)
    :raises CoverageError: If s(η) leaves the input grid on a non-periodic window
    """
    grid = output_grid or input_field.grid
    if input_field.is_zero():
        return SampledField(grid, np.zeros(grid.n))
    eta = grid.tau
    s = time_remap(eta, p)
    in_grid = input_field.grid
    periodic = _periods_in_window(in_grid, p) is not None and in_grid.matches(grid)
    if not periodic:
        low, high = in_grid.origin, in_grid.end
        slack = 1e-9 * in_grid.dt
        if s.min() < low - slack or s.max() > high + slack:
            raise CoverageError(
                f"Input time s ∈ [{s.min():.6e}, {s.max():.6e}] s leaves the input grid "
                f"[{low:.6e}, {high:.6e}] s. Extend the input grid by half a modulation "
                f"period on each side or use a window of whole periods."
            )
        s = np.clip(s, low, high)
    values = _interpolant(input_field, periodic)(s)
    logger.debug(f"Dispersionless propagation at αz={p.alpha_z:.4f}, periodic={periodic}")
    return SampledField(grid, values * gain_profile(eta, p))


def chirp_approximation(
    eta, omega0: Union[Frequency, float], p: BeatParameters, amplitude: float = 1.0
) -> np.ndarray:
    """Long-pulse limit ℰ₀cos(ω₀∫₀^η G dη') = ℰ₀cos(ω₀ s(η)) of a constant input."""
    return amplitude * np.cos(_value(omega0) * time_remap(np.asarray(eta, dtype=float), p))


def phase_modulation_approximation(
    eta, omega0: Union[Frequency, float], p: BeatParameters, amplitude: float = 1.0
) -> np.ndarray:
    """Small-αz limit ℰ₀cos(ω₀η − γz·sin(ω_mη)) with γ = (ω₀/ω_m)α."""
    eta = np.asarray(eta, dtype=float)
    omega0 = _value(omega0)
    gamma_z = omega0 / p.omega_m * p.alpha_z
    return amplitude * np.cos(omega0 * eta - gamma_z * np.sin(p.omega_m * eta))


def reduced_rhs(values: np.ndarray, grid: TimeGrid, p: BeatParameters) -> np.ndarray:
    """
    ∂E/∂z of the reduced propagation law,
    −α·cos(ω_mη)·E − (α/ω_m)·sin(ω_mη)·∂E/∂η, on an η grid.
    """
    eta = grid.tau
    derivative = spectral_derivative(values, grid, 1)
    return -p.alpha * (
        np.cos(p.omega_m * eta) * values + np.sin(p.omega_m * eta) * derivative / p.omega_m
    )


@dataclass(frozen=True)
class ConservedPair:
    input: float
    output: float
    relative_error: float


@dataclass(frozen=True)
class ConservationReport:
    """Input/output values of the quantities preserved by the exact solution."""
    area: ConservedPair
    photon_number: ConservedPair
    length_frequency: ConservedPair
    oscillations: ConservedPair
    input_interval: Tuple[float, float]
    output_interval: Tuple[float, float]

    def max_error(self, include_oscillations: bool = True) -> float:
        pairs = [self.area, self.photon_number, self.length_frequency]
        if include_oscillations:
            pairs.append(self.oscillations)
        return max(pair.relative_error for pair in pairs)

    def to_dict(self) -> Dict[str, object]:
        return asdict(self)


def _pair(before: float, after: float, scale: Optional[float] = None) -> ConservedPair:
    scale = abs(before) if scale is None else scale
    error = abs(after - before) / scale if scale else abs(after - before)
    return ConservedPair(float(before), float(after), float(error))


def support_interval(field: SampledField, threshold: float = EDGE_DECAY) -> Tuple[float, float]:
    """
    First and last sample times where |E| exceeds ``threshold`` of the peak.

    :raises DomainError: For a zero field
    """
    magnitude = np.abs(field.e_real)
    peak = magnitude.max()
    if peak == 0:
        raise DomainError("Support interval of a zero field is undefined")
    above = np.flatnonzero(magnitude > threshold * peak)
    tau = field.tau
    return float(tau[above[0]]), float(tau[above[-1]])


def conservation_report(
    input_field: SampledField,
    output_field: SampledField,
    omega0: Union[Frequency, float],
    p: BeatParameters,
) -> ConservationReport:
    """
    Compare quantities that the dispersionless solution carries through unchanged.

    - area ∫E dη, relative to the L1 norm ∫|E_in| ds
    - photon number (cε₀/2ħ)∫E²/ω_osc dη with ω_osc = G·ω₀
    - pulse length times mean frequency, the phase −Δarg ℰ each field
      accumulates over its interval
    - number of oscillations, half the zero crossings within the intervals

    The input interval [s₁, s₂] is where |E_in| exceeds ``MATCHED_LEVEL`` of its
    peak; its image under the inverse remap is the output interval.
    """
    omega0 = _value(omega0)
    if omega0 <= 0:
        raise DomainError(f"Carrier frequency must be positive, got {omega0}")
    dt_in = input_field.grid.dt
    dt_out = output_field.grid.dt
    eta = output_field.tau

    area_in = float(np.sum(input_field.e_real) * dt_in)
    area_out = float(np.sum(output_field.e_real) * dt_out)
    l1_norm = float(np.sum(np.abs(input_field.e_real)) * dt_in)

    photon_scale = SPEED_OF_LIGHT * epsilon_0 / (2.0 * hbar)
    photons_in = photon_scale * float(np.sum(input_field.e_real**2) / omega0 * dt_in)
    omega_osc = instantaneous_frequency(eta, omega0, p)
    photons_out = photon_scale * float(np.sum(output_field.e_real**2 / omega_osc) * dt_out)

    s1, s2 = support_interval(input_field, MATCHED_LEVEL)
    eta1, eta2 = float(inverse_time_remap(s1, p)), float(inverse_time_remap(s2, p))
    product_in = phase_advance(input_field, s1, s2)
    product_out = phase_advance(output_field, eta1, eta2)

    cycles_in = count_oscillations(input_field, interval=(s1, s2))
    cycles_out = count_oscillations(output_field, interval=(eta1, eta2))

    report = ConservationReport(
        area=_pair(area_in, area_out, scale=l1_norm),
        photon_number=_pair(photons_in, photons_out),
        length_frequency=_pair(product_in, product_out),
        oscillations=_pair(cycles_in, cycles_out, scale=max(cycles_in, 1.0)),
        input_interval=(s1, s2),
        output_interval=(eta1, eta2),
    )
    logger.info(
        f"Conservation at αz={p.alpha_z:.3f}: area {report.area.relative_error:.2e}, "
        f"photons {report.photon_number.relative_error:.2e}, "
        f"length·frequency {report.length_frequency.relative_error:.2e}, "
        f"oscillations {cycles_in:g} -> {cycles_out:g}"
    )
    return report


def gain_extremes(p: BeatParameters) -> Tuple[float, float]:
    """(min G, max G) = (e^{−αz}, e^{αz})."""
    return math.exp(-p.alpha_z), math.exp(p.alpha_z)
