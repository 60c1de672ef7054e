"""
Drive fields that prepare the Raman coherence.
"""
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT
from scipy.constants import epsilon_0

from ..core.grids import TimeGrid
from ..core.pulses import WidthConvention, envelope_rate
from ..core.sidebands import SidebandSet
from ..exceptions import DomainError, ValidationError


def peak_field_from_intensity(intensity_w_cm2: float) -> float:
    """Peak field amplitude |E| in V/m for a peak intensity I = ½ε₀c|E|²."""
    if intensity_w_cm2 < 0:
        raise DomainError(f"Intensity must be non-negative, got {intensity_w_cm2}")
    return math.sqrt(2.0 * intensity_w_cm2 * 1e4 / (epsilon_0 * SPEED_OF_LIGHT))


@dataclass(frozen=True)
class DriveLine:
    """One Gaussian drive sideband with envelope E₀e^{iφ}·exp(−c(τ−τ_p)²)."""
    frequency: float  # rad/s
    peak_field: float  # V/m
    width: float  # s, intensity FWHM
    peak_time: float = 0.0
    phase: float = 0.0

    def __post_init__(self):
        if self.frequency <= 0:
            raise ValidationError(f"Drive frequency must be positive, got {self.frequency}")
        if self.width <= 0:
            raise ValidationError(f"Drive width must be positive, got {self.width}")
        if self.peak_field < 0:
            raise ValidationError(f"Drive amplitude must be non-negative, got {self.peak_field}")

    @classmethod
    def from_intensity(
        cls, frequency: float, intensity_w_cm2: float, width: float, peak_time: float = 0.0,
        phase: float = 0.0,
    ) -> "DriveLine":
        return cls(frequency, peak_field_from_intensity(intensity_w_cm2), width, peak_time, phase)

    @property
    def rate(self) -> float:
        return envelope_rate(self.width, WidthConvention.INTENSITY_FWHM)

    @property
    def decay_time(self) -> float:
        """τ_d of exp(−(τ−τ_p)²/τ_d²)."""
        return 1.0 / math.sqrt(self.rate)

    def envelope(self, tau) -> np.ndarray:
        tau = np.asarray(tau, dtype=float)
        return self.peak_field * np.exp(1j * self.phase) * np.exp(-self.rate * (tau - self.peak_time) ** 2)

    def spectral_lobe(self, nu) -> np.ndarray:
        """∫E(τ)e^{iντ}dτ of the envelope, evaluated at detuning ν from the line."""
        nu = np.asarray(nu, dtype=float)
        tau_d = self.decay_time
        return (
            self.peak_field
            * np.exp(1j * self.phase)
            * tau_d
            * math.sqrt(math.pi)
            * np.exp(-0.25 * (nu * tau_d) ** 2)
            * np.exp(1j * nu * self.peak_time)
        )


@dataclass(frozen=True)
class DriveConfig:
    """
    Two drive lines separated by the modulation frequency ω_m = ω_ba − δ.

    ``lines[0]`` is the lower-frequency line (comb order 0).
    """
    lines: Tuple[DriveLine, DriveLine]
    delta: float = 0.0  # rad/s
    gamma1: float = 0.0  # s⁻¹
    gamma2: float = 0.0  # s⁻¹

    def __post_init__(self):
        if len(self.lines) != 2:
            raise ValidationError(f"Exactly two drive lines are required, got {len(self.lines)}")
        lower, upper = sorted(self.lines, key=lambda line: line.frequency)
        if upper.frequency == lower.frequency:
            raise ValidationError("Drive lines must have different frequencies")
        object.__setattr__(self, "lines", (lower, upper))
        if self.gamma1 < 0 or self.gamma2 < 0:
            raise ValidationError("Decay rates γ₁ and γ₂ must be non-negative")

    @property
    def omega_m(self) -> float:
        return self.lines[1].frequency - self.lines[0].frequency

    @property
    def raman_frequency(self) -> float:
        """ω_ba = ω_m + δ."""
        return self.omega_m + self.delta

    @property
    def omega0(self) -> float:
        return self.lines[0].frequency

    def check_modulation(self, omega_m: float, rtol: float = 1e-3) -> None:
        """
        :raises ValidationError: If the drive separation disagrees with the medium's ω_m
        """
        if abs(self.omega_m - omega_m) > rtol * omega_m:
            raise ValidationError(
                f"Drive separation {self.omega_m:.6e} rad/s does not match the medium "
                f"modulation frequency {omega_m:.6e} rad/s (relative tolerance {rtol:g})"
            )

    def is_zero(self) -> bool:
        return all(line.peak_field == 0 for line in self.lines)

    def sidebands(
        self, grid: TimeGrid, q_min: int = 0, q_max: int = 1, omega_m: Optional[float] = None
    ) -> SidebandSet:
        """Sampled comb holding the two drive envelopes at orders 0 and 1."""
        if q_min > 0 or q_max < 1:
            raise DomainError("Drive comb must contain orders 0 and 1")
        env = np.zeros((q_max - q_min + 1, grid.n), dtype=complex)
        env[-q_min] = self.lines[0].envelope(grid.tau)
        env[1 - q_min] = self.lines[1].envelope(grid.tau)
        return SidebandSet(self.omega0, omega_m or self.omega_m, q_min, q_max, env, grid)
