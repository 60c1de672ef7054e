"""
Discrete sideband combs ω_q = ω₀ + q·ω_m.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..exceptions import DomainError
from .grids import TimeGrid


@dataclass(frozen=True, eq=False)
class SidebandSet:
    """
    Complex envelopes E_q of the sidebands q_min..q_max.

    ``env`` has shape (n_q,) for constant envelopes or (n_q, grid.n) for
    envelopes sampled over local time.
    """
    omega0: float
    omega_m: float
    q_min: int
    q_max: int
    env: np.ndarray
    grid: Optional[TimeGrid] = None

    def __post_init__(self):
        if self.q_max < self.q_min:
            raise DomainError(f"Empty sideband range [{self.q_min}, {self.q_max}]")
        if self.omega_m <= 0:
            raise DomainError(f"Modulation frequency must be positive, got {self.omega_m}")
        lowest = self.omega0 + self.q_min * self.omega_m
        if lowest <= 0:
            raise DomainError(
                f"Sideband q={self.q_min} has non-positive frequency {lowest:.4e} rad/s"
            )
        env = np.asarray(self.env, dtype=complex).copy()
        count = self.q_max - self.q_min + 1
        expected = (count,) if self.grid is None else (count, self.grid.n)
        if env.shape != expected:
            raise DomainError(f"Envelope array has shape {env.shape}, expected {expected}")
        env.setflags(write=False)
        object.__setattr__(self, "env", env)

    @classmethod
    def single(
        cls, omega0: float, omega_m: float, q_min: int, q_max: int, amplitude: complex = 1.0
    ) -> "SidebandSet":
        """Constant comb with only the q = 0 line populated."""
        env = np.zeros(q_max - q_min + 1, dtype=complex)
        if q_min <= 0 <= q_max:
            env[-q_min] = amplitude
        return cls(omega0, omega_m, q_min, q_max, env)

    @property
    def orders(self) -> np.ndarray:
        return np.arange(self.q_min, self.q_max + 1)

    @property
    def frequencies(self) -> np.ndarray:
        return self.omega0 + self.orders * self.omega_m

    @property
    def is_sampled(self) -> bool:
        return self.grid is not None

    def index(self, q: int) -> int:
        if not self.q_min <= q <= self.q_max:
            raise DomainError(f"Order {q} outside comb [{self.q_min}, {self.q_max}]")
        return q - self.q_min

    def envelope(self, q: int) -> np.ndarray:
        return self.env[self.index(q)]

    def with_env(self, env: np.ndarray) -> "SidebandSet":
        return SidebandSet(self.omega0, self.omega_m, self.q_min, self.q_max, env, self.grid)

    def powers(self) -> np.ndarray:
        """|E_q|², peak over τ for sampled combs."""
        power = np.abs(self.env) ** 2
        return power.max(axis=1) if self.is_sampled else power

    def integrated_powers(self) -> np.ndarray:
        """|E_q|² integrated over τ (sampled) or |E_q|² (constant)."""
        power = np.abs(self.env) ** 2
        if self.is_sampled:
            return power.sum(axis=1) * self.grid.dt
        return power

    def photon_flux(self) -> float:
        """Σ_q |E_q|²/ω_q, integrated over τ for sampled combs."""
        return float(np.sum(self.integrated_powers() / self.frequencies))
