"""
Uniform local-time grids.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy import fft

from ..exceptions import DomainError


@dataclass(frozen=True)
class TimeGrid:
    """
    Uniform grid over local time τ.

    :param origin: First sample time, s
    :param dt: Sample spacing, s
    :param n: Number of samples
    """
    origin: float
    dt: float
    n: int

    def __post_init__(self):
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise DomainError(f"Grid step must be positive and finite, got {self.dt}")
        if self.n < 2:
            raise DomainError(f"Grid needs at least two points, got {self.n}")
        if not math.isfinite(self.origin):
            raise DomainError(f"Grid origin must be finite, got {self.origin}")

    @classmethod
    def centered(cls, n: int, dt: float) -> "TimeGrid":
        """Grid of n points with τ = 0 on a sample near the middle."""
        return cls(origin=-(n // 2) * dt, dt=dt, n=n)

    @classmethod
    def commensurate(cls, n: int, period: float, periods: int) -> "TimeGrid":
        """
        Grid whose transform window n·dt spans an integer number of periods.

        Frequency shifts by 2π/period then land exactly on ``periods`` bins, and
        the periodic extension of the grid agrees with period-shift symmetries.
        """
        if periods < 1:
            raise DomainError(f"periods must be a positive integer, got {periods}")
        window = periods * period
        return cls(origin=-window / 2.0, dt=window / n, n=n)

    @property
    def tau(self) -> np.ndarray:
        return self.origin + self.dt * np.arange(self.n)

    @property
    def span(self) -> float:
        return (self.n - 1) * self.dt

    @property
    def window(self) -> float:
        """Periodic window n·dt of the discrete transform."""
        return self.n * self.dt

    @property
    def end(self) -> float:
        return self.origin + self.span

    @property
    def is_power_of_two(self) -> bool:
        return self.n & (self.n - 1) == 0

    @property
    def domega(self) -> float:
        return 2.0 * math.pi / self.window

    def omega(self) -> np.ndarray:
        """Angular frequency of each transform bin, in transform (unshifted) order."""
        return 2.0 * math.pi * fft.fftfreq(self.n, self.dt)

    def require_spectral(self) -> None:
        """
        :raises DomainError: If the grid cannot be used by spectral operations
        """
        if not self.is_power_of_two:
            raise DomainError(f"Spectral operations need a power-of-two grid, got n={self.n}")

    def bins_per(self, omega_shift: float, tolerance: float = 1e-9) -> int:
        """
        Number of frequency bins covering ``omega_shift``.

        :raises DomainError: If the shift is not an integer number of bins
        """
        ratio = omega_shift / self.domega
        bins = int(round(ratio))
        if bins == 0 or abs(ratio - bins) > tolerance * max(1.0, abs(ratio)):
            raise DomainError(
                f"Frequency shift {omega_shift:.6e} rad/s is not commensurate with the "
                f"grid spacing {self.domega:.6e} rad/s (ratio {ratio:.6f})"
            )
        return bins

    def matches(self, other: "TimeGrid", rtol: float = 1e-12) -> bool:
        return (
            self.n == other.n
            and math.isclose(self.dt, other.dt, rel_tol=rtol)
            and math.isclose(self.origin, other.origin, rel_tol=rtol, abs_tol=rtol * self.dt)
        )
