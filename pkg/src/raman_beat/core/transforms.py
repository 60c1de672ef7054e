"""
Spectral transforms in the E(τ) = ½∫E_ω e^{−iωτ}dω convention.

Transform bins k carry angular frequency ω_k = 2π·fftfreq(n, dt)[k]. With that
sign convention a component e^{−iω_kτ} with ω_k > 0 is a positive frequency.
"""
import numpy as np
from scipy import fft

from ..exceptions import DomainError
from .fields import AnalyticField, SampledField, Spectrum
from .grids import TimeGrid


def _positive_mask(grid: TimeGrid) -> np.ndarray:
    return grid.omega() > 0


def analytic_signal(field: SampledField) -> AnalyticField:
    """
    Positive-frequency component ℰ of a real field, with E = Re ℰ.

    :param field: Windowed real field on a power-of-two grid
    :return: AnalyticField whose spectrum vanishes at ω ≤ 0
    :raises WindowingError: If the field has not decayed at the grid edges
    """
    field.grid.require_spectral()
    field.check_windowing()
    # E_n = Σ_k C_k e^{−2πikn/N} with C = ifft(E)
    coefficients = fft.ifft(field.e_real)
    coefficients = np.where(_positive_mask(field.grid), 2.0 * coefficients, 0.0)
    return AnalyticField(field.grid, fft.fft(coefficients))


def project_positive(values: np.ndarray, grid: TimeGrid) -> np.ndarray:
    """Drop non-positive frequency content of complex samples without rescaling."""
    coefficients = fft.ifft(values)
    coefficients[~_positive_mask(grid)] = 0.0
    return fft.fft(coefficients)


def spectrum_of(field: SampledField) -> Spectrum:
    """
    Spectral amplitudes E_ω of a real field on an ascending frequency axis.

    :raises WindowingError: If the field has not decayed at the grid edges
    """
    field.grid.require_spectral()
    field.check_windowing()
    return _spectrum(field.e_real, field.grid)


def spectrum_of_samples(values: np.ndarray, grid: TimeGrid) -> Spectrum:
    """Spectrum of arbitrary (real or complex) samples, without the windowing check."""
    grid.require_spectral()
    return _spectrum(np.asarray(values), grid)


def _spectrum(values: np.ndarray, grid: TimeGrid) -> Spectrum:
    omega = grid.omega()
    amplitude = (grid.dt / np.pi) * grid.n * np.exp(1j * omega * grid.origin) * fft.ifft(values)
    return Spectrum(fft.fftshift(omega), fft.fftshift(amplitude))


def inverse_spectrum(spectrum: Spectrum, grid: TimeGrid, real: bool = True) -> np.ndarray:
    """
    Synthesise time samples from spectral amplitudes on ``grid``.

    :param spectrum: Spectrum laid out as produced by :func:`spectrum_of` for this grid
    :param grid: Target grid
    :param real: Return the real part (True) or the complex synthesis
    :raises DomainError: If the spectrum axis does not belong to the grid
    """
    omega = grid.omega()
    if spectrum.omega.size != grid.n or not np.allclose(
        fft.ifftshift(spectrum.omega), omega, rtol=1e-12, atol=1e-12 * grid.domega
    ):
        raise DomainError("Spectrum axis does not match the target grid")
    amplitude = fft.ifftshift(spectrum.amplitude)
    samples = 0.5 * grid.domega * fft.fft(amplitude * np.exp(-1j * omega * grid.origin))
    return samples.real if real else samples


def inverse_to_field(spectrum: Spectrum, grid: TimeGrid) -> SampledField:
    return SampledField(grid, inverse_spectrum(spectrum, grid, real=True))


def spectral_derivative(values: np.ndarray, grid: TimeGrid, order: int = 1) -> np.ndarray:
    """
    Periodic spectral derivative dᵐ/dτᵐ of samples on ``grid``.

    Odd orders zero the Nyquist bin of even grids.
    """
    if order < 0:
        raise DomainError(f"Derivative order must be non-negative, got {order}")
    if order == 0:
        return np.array(values, copy=True)
    factor = 2j * np.pi * fft.fftfreq(grid.n, grid.dt)
    if order % 2 == 1 and grid.n % 2 == 0:
        factor[grid.n // 2] = 0.0
    transformed = fft.fft(values) * factor**order
    result = fft.ifft(transformed)
    return result.real if np.isrealobj(values) else result


def instantaneous_phase_frequency(field: AnalyticField) -> np.ndarray:
    """
    Local oscillation frequency −d(arg ℰ)/dτ of an analytic field, rad/s.

    Samples with vanishing envelope return zero.
    """
    values = field.e_complex
    derivative = spectral_derivative(values, field.grid, 1)
    magnitude = np.abs(values) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        omega = -np.imag(np.conj(values) * derivative) / magnitude
    floor = 1e-12 * magnitude.max() if magnitude.size else 0.0
    return np.where(magnitude > floor, omega, 0.0)


def delay_field(field: SampledField, delay: float) -> SampledField:
    """
    Field delayed by ``delay`` seconds, E(τ − delay), by a spectral phase.

    The grid is treated as periodic, so content shifted past one end reappears
    at the other.
    """
    if delay == 0:
        return field
    grid = field.grid
    coefficients = fft.ifft(field.e_real) * np.exp(1j * grid.omega() * delay)
    if grid.n % 2 == 0:
        coefficients[grid.n // 2] = coefficients[grid.n // 2].real
    return SampledField(grid, fft.fft(coefficients).real)
