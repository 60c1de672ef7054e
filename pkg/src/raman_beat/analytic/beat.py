"""
Beat of a probe with a prepared Raman coherence in a dispersionless medium.

All functions work in reduced local time η = τ − z/v + φ/ω_m, in which the
coherence term reads ρ_ab·e^{iω_mτ} = −i|ρ_ab|·e^{iω_mη}.
"""
import math
from dataclasses import dataclass, replace
from typing import Union

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT

from ..core.units import Frequency
from ..exceptions import DomainError
from ..medium.parameters import MediumParameters
from ..medium.state import TwoLevelState, kappa_of

ArrayLike = Union[float, np.ndarray]


def _value(omega: Union[Frequency, float]) -> float:
    return float(omega.value if isinstance(omega, Frequency) else omega)


@dataclass(frozen=True)
class BeatParameters:
    """
    :param alpha: Coupling parameter α, m⁻¹
    :param omega_m: Modulation frequency, rad/s
    :param v: Reduced-frame velocity ω_m/κ, m/s (inf when κ = 0)
    :param phi: Frame phase arg ρ_ab + π/2, rad
    :param z: Propagation length, m
    """
    alpha: float
    omega_m: float
    v: float = math.inf
    phi: float = 0.0
    z: float = 0.0

    def __post_init__(self):
        if not self.alpha >= 0:
            raise DomainError(f"Coupling parameter must be non-negative, got {self.alpha}")
        if not self.omega_m > 0:
            raise DomainError(f"Modulation frequency must be positive, got {self.omega_m}")
        if not math.isfinite(self.alpha * self.z):
            raise DomainError("αz must be finite")

    @classmethod
    def from_alpha_z(cls, alpha_z: float, omega_m: float) -> "BeatParameters":
        """Unit-length parameters with a given αz, for normalised studies."""
        return cls(alpha=alpha_z, omega_m=omega_m, z=1.0)

    @classmethod
    def from_state(
        cls, params: MediumParameters, state: TwoLevelState, z: float = 0.0
    ) -> "BeatParameters":
        """Beat parameters of a medium holding ``state`` (coherence referenced at z = 0)."""
        kappa = kappa_of(params, state)
        rho_ab = state.rho_ab
        phi = math.atan2(rho_ab.imag, rho_ab.real) + math.pi / 2 if rho_ab else 0.0
        return cls(
            alpha=coupling_alpha(params, abs(rho_ab)),
            omega_m=params.omega_m,
            v=params.omega_m / kappa if kappa else math.inf,
            phi=phi,
            z=z,
        )

    @property
    def alpha_z(self) -> float:
        return self.alpha * self.z

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega_m

    @property
    def kappa(self) -> float:
        return self.omega_m / self.v

    def at(self, z: float) -> "BeatParameters":
        return replace(self, z=z)


def coupling_alpha(params: MediumParameters, rho0: float) -> float:
    """
    Coupling parameter α = (2ħ/ε₀c)·N·ω_m·d₀·ρ₀, m⁻¹.

    :raises DomainError: If ρ₀ lies outside [0, 1/2]
    """
    if not 0.0 <= rho0 <= 0.5 + 1e-12:
        raise DomainError(f"Coherence magnitude must lie in [0, 1/2], got {rho0}")
    return 2.0 * params.coupling_constant * params.omega_m * params.d0 * rho0


def reduced_time(tau: ArrayLike, p: BeatParameters) -> ArrayLike:
    """η = τ − z/v + φ/ω_m."""
    return np.asarray(tau) - p.z / p.v + p.phi / p.omega_m


def local_time(eta: ArrayLike, p: BeatParameters) -> ArrayLike:
    """Inverse of :func:`reduced_time`."""
    return np.asarray(eta) + p.z / p.v - p.phi / p.omega_m


def gain_profile(eta: ArrayLike, p: BeatParameters) -> ArrayLike:
    """G(η) = 1/(e^{αz}cos²(ω_mη/2) + e^{−αz}sin²(ω_mη/2))."""
    x = 0.5 * p.omega_m * np.asarray(eta, dtype=float)
    az = p.alpha_z
    return 1.0 / (math.exp(az) * np.cos(x) ** 2 + math.exp(-az) * np.sin(x) ** 2)


def _remap(x: np.ndarray, alpha_z: float) -> np.ndarray:
    # s and η share the half-period index k, so the map is continuous
    k = np.floor(x / math.pi + 0.5)
    y = x - k * math.pi
    u = np.arctan2(math.exp(-alpha_z) * np.sin(y), np.cos(y))
    return u + k * math.pi


def time_remap(eta: ArrayLike, p: BeatParameters) -> ArrayLike:
    """
    Input time s(η) from tan(ω_m s/2) = e^{−αz}·tan(ω_m η/2).

    Continuous and strictly increasing, with s(η + T_m) = s(η) + T_m.
    """
    x = 0.5 * p.omega_m * np.asarray(eta, dtype=float)
    result = 2.0 * _remap(x, p.alpha_z) / p.omega_m
    return float(result) if np.ndim(result) == 0 else result


def inverse_time_remap(s: ArrayLike, p: BeatParameters) -> ArrayLike:
    """Output time η(s), the inverse of :func:`time_remap`."""
    x = 0.5 * p.omega_m * np.asarray(s, dtype=float)
    result = 2.0 * _remap(x, -p.alpha_z) / p.omega_m
    return float(result) if np.ndim(result) == 0 else result


def local_remap(eta: ArrayLike, eta_i: float, p: BeatParameters) -> ArrayLike:
    """Linearisation s(η) ≈ s(η_i) + G(η_i)(η − η_i) near a chosen time."""
    return time_remap(eta_i, p) + gain_profile(eta_i, p) * (np.asarray(eta) - eta_i)


def instantaneous_frequency(
    eta: ArrayLike, omega0: Union[Frequency, float], p: BeatParameters
) -> ArrayLike:
    """Local oscillation frequency ω_osc(η) = G(η)·ω₀, rad/s."""
    return gain_profile(eta, p) * _value(omega0)


def susceptibility_profile(eta: ArrayLike, p: BeatParameters, kappa: float) -> ArrayLike:
    """Instantaneous susceptibility χ(η) = (2c/ω_m)[κ + α·sin(ω_mη)]."""
    eta = np.asarray(eta, dtype=float)
    return 2.0 * SPEED_OF_LIGHT / p.omega_m * (kappa + p.alpha * np.sin(p.omega_m * eta))


def susceptibility_in_local_time(
    tau: ArrayLike, params: MediumParameters, state: TwoLevelState, z: float = 0.0
) -> ArrayLike:
    """
    χ(τ) = (2Nħ/ε₀)(a₀ρ_aa + b₀ρ_bb + d₀ρ_ba e^{−iω_mτ} + d₀ρ_ab e^{iω_mτ}) with the
    coherence advanced to depth z.
    """
    tau = np.asarray(tau, dtype=float)
    kappa = kappa_of(params, state)
    rho_ab = state.rho_ab * np.exp(-1j * kappa * z)
    modulation = 2.0 * np.real(rho_ab * np.exp(1j * params.omega_m * tau))
    prefactor = 2.0 * params.coupling_constant * SPEED_OF_LIGHT
    return prefactor * (params.a0 * state.rho_aa + params.b0 * state.rho_bb + params.d0 * modulation)


def peak_times(p: BeatParameters, start: float, stop: float) -> np.ndarray:
    """Times η_n = (2n+1)π/ω_m in [start, stop] where G peaks at e^{αz}."""
    n = np.arange(math.ceil(start / p.period - 0.5), math.floor(stop / p.period - 0.5) + 1)
    return (2 * n + 1) * math.pi / p.omega_m


def dip_times(p: BeatParameters, start: float, stop: float) -> np.ndarray:
    """Times 2nπ/ω_m in [start, stop] where G dips to e^{−αz}."""
    n = np.arange(math.ceil(start / p.period), math.floor(stop / p.period) + 1)
    return 2 * n * math.pi / p.omega_m


@dataclass(frozen=True)
class SidebandOrders:
    q_as: float
    q_s: float
    gamma: float  # m⁻¹


def sideband_orders(p: BeatParameters, omega0: Union[Frequency, float]) -> SidebandOrders:
    """
    Outermost anti-Stokes and Stokes orders of a long probe,
    q_AS = (e^{αz}−1)ω₀/ω_m and q_S = −(1−e^{−αz})ω₀/ω_m, with γ = (ω₀/ω_m)α.
    """
    ratio = _value(omega0) / p.omega_m
    az = p.alpha_z
    return SidebandOrders(
        q_as=math.expm1(az) * ratio,
        q_s=math.expm1(-az) * ratio,
        gamma=ratio * p.alpha,
    )
