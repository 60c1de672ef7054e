"""
Field representations shared by every module.
"""
from dataclasses import dataclass

import numpy as np

from ..exceptions import DomainError, WindowingError
from .grids import TimeGrid

EDGE_DECAY = 1e-6


def _edge_band(n: int) -> int:
    return max(2, n // 256)


def check_windowed(values: np.ndarray, tolerance: float = EDGE_DECAY) -> None:
    """
    Require samples to decay at both grid ends.

    :raises WindowingError: If the outer samples exceed ``tolerance`` of the peak
    """
    magnitude = np.abs(values)
    peak = magnitude.max() if magnitude.size else 0.0
    if peak == 0.0:
        return
    band = _edge_band(magnitude.size)
    edge = max(magnitude[:band].max(), magnitude[-band:].max())
    if edge > tolerance * peak:
        raise WindowingError(
            f"Field has not decayed at the grid edges: edge/peak = {edge / peak:.3e} "
            f"(limit {tolerance:.0e}). Widen the grid or shorten the pulse."
        )


@dataclass(frozen=True, eq=False)
class SampledField:
    """Real electric field E(τ) in V/m on a uniform grid."""
    grid: TimeGrid
    e_real: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.e_real)
        if np.iscomplexobj(values):
            raise DomainError("SampledField values must be real; use AnalyticField for complex")
        values = values.astype(float, copy=True)
        if values.shape != (self.grid.n,):
            raise DomainError(f"Expected {self.grid.n} samples, got shape {values.shape}")
        values.setflags(write=False)
        object.__setattr__(self, "e_real", values)

    @property
    def tau(self) -> np.ndarray:
        return self.grid.tau

    @property
    def peak(self) -> float:
        return float(np.max(np.abs(self.e_real)))

    def is_zero(self) -> bool:
        return not np.any(self.e_real)

    def check_windowing(self) -> None:
        check_windowed(self.e_real)

    def scaled(self, factor: float) -> "SampledField":
        return SampledField(self.grid, self.e_real * factor)


@dataclass(frozen=True, eq=False)
class AnalyticField:
    """Positive-frequency field ℰ(τ) with E = Re ℰ."""
    grid: TimeGrid
    e_complex: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.e_complex, dtype=complex).copy()
        if values.shape != (self.grid.n,):
            raise DomainError(f"Expected {self.grid.n} samples, got shape {values.shape}")
        values.setflags(write=False)
        object.__setattr__(self, "e_complex", values)

    @property
    def tau(self) -> np.ndarray:
        return self.grid.tau

    @property
    def envelope(self) -> np.ndarray:
        return np.abs(self.e_complex)

    @property
    def intensity(self) -> np.ndarray:
        """Cycle-averaged |ℰ|², V²/m²."""
        return np.abs(self.e_complex) ** 2

    def real_field(self) -> SampledField:
        return SampledField(self.grid, self.e_complex.real)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """
    Spectral amplitudes E_ω on an ascending angular-frequency axis.

    Normalised so that E(τ) = ½∫E_ω e^{−iωτ}dω.
    """
    omega: np.ndarray
    amplitude: np.ndarray

    def __post_init__(self):
        omega = np.asarray(self.omega, dtype=float).copy()
        amplitude = np.asarray(self.amplitude, dtype=complex).copy()
        if omega.shape != amplitude.shape or omega.ndim != 1:
            raise DomainError("Spectrum axis and amplitudes must be 1-D arrays of equal length")
        omega.setflags(write=False)
        amplitude.setflags(write=False)
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "amplitude", amplitude)

    @property
    def domega(self) -> float:
        return float(self.omega[1] - self.omega[0])

    @property
    def power(self) -> np.ndarray:
        return np.abs(self.amplitude) ** 2

    def energy(self) -> float:
        """(π/2)Σ|E_ω|²dω, equal to ∫E²dτ of the generating field."""
        return float(0.5 * np.pi * np.sum(self.power) * self.domega)

    def hermitian_error(self) -> float:
        """Largest relative deviation from E_{−ω} = E_ω* over the symmetric part of the axis."""
        amplitude = self.amplitude
        # ascending axis with an unpaired most-negative bin on even grids
        start = 1 if self.omega.size % 2 == 0 else 0
        paired = amplitude[start:]
        mirror = np.conj(paired[::-1])
        scale = np.max(np.abs(amplitude)) or 1.0
        return float(np.max(np.abs(paired - mirror)) / scale)
