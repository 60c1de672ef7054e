"""
Fourier series of the gain profile and Bessel expansions of the sideband comb.
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Tuple, Union

import numpy as np
from scipy import special

from ..core.units import Frequency
from ..exceptions import DomainError
from .beat import BeatParameters

logger = logging.getLogger(__name__)

VALIDITY_LIMIT = 0.1
BESSEL_FLOOR = 1e-14
ARGUMENT_FLOOR = 1e-12


class BesselMode(str, Enum):
    FULL_PRODUCT = "full-product"
    SINGLE_BESSEL = "single-bessel"
    LINEARIZED = "linearized"
    TWO_COLOR = "two-color"

    @classmethod
    def parse(cls, value: Union[str, "BesselMode"]) -> "BesselMode":
        try:
            return cls(value)
        except ValueError:
            allowed = ", ".join(mode.value for mode in cls)
            raise DomainError(f"Unknown Bessel mode '{value}'. Expected one of: {allowed}")


@dataclass(frozen=True)
class FourierSeries:
    """
    G(η) = c₀ + Σ_{n≥1} c_n cos(nω_mη) and s(η) = η + Σ_{n≥1} b_n sin(nω_mη),
    with c_n = 2(−1)ⁿtanhⁿ(αz/2) and b_n = c_n/(nω_m).
    """
    omega_m: float
    cosine: np.ndarray  # c_0..c_N
    sine: np.ndarray = field(init=False)  # b_0..b_N (b_0 = 0)

    def __post_init__(self):
        n = np.arange(self.cosine.size)
        sine = np.zeros(self.cosine.size)
        sine[1:] = self.cosine[1:] / (n[1:] * self.omega_m)
        object.__setattr__(self, "sine", sine)

    @property
    def order(self) -> int:
        return self.cosine.size - 1

    def gain(self, eta) -> np.ndarray:
        eta = np.asarray(eta, dtype=float)
        n = np.arange(self.cosine.size)
        return np.cos(np.multiply.outer(eta, n) * self.omega_m) @ self.cosine

    def remap(self, eta) -> np.ndarray:
        eta = np.asarray(eta, dtype=float)
        n = np.arange(self.sine.size)
        return eta + np.sin(np.multiply.outer(eta, n) * self.omega_m) @ self.sine


def fourier_G(p: BeatParameters, n_max: int) -> FourierSeries:
    """
    Cosine series of the gain profile, c₀ = 1 and c_n = 2(−1)ⁿtanhⁿ(αz/2).

    :raises DomainError: For negative ``n_max``
    """
    if n_max < 0:
        raise DomainError(f"Series order must be non-negative, got {n_max}")
    t = math.tanh(0.5 * p.alpha_z)
    n = np.arange(n_max + 1)
    coefficients = 2.0 * (-t) ** n
    coefficients[0] = 1.0
    return FourierSeries(p.omega_m, coefficients)


@dataclass(frozen=True)
class BesselSpectrum:
    """Complex sideband amplitudes ℰ_q over an order range, with validity diagnostics."""
    orders: np.ndarray
    amplitudes: np.ndarray
    mode: BesselMode
    validity: Dict[str, float] = field(default_factory=dict)

    def amplitude(self, q: int) -> complex:
        index = q - int(self.orders[0])
        if not 0 <= index < self.orders.size:
            raise DomainError(f"Order {q} outside [{self.orders[0]}, {self.orders[-1]}]")
        return complex(self.amplitudes[index])

    @property
    def powers(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def is_valid(self, limit: float = VALIDITY_LIMIT) -> bool:
        return all(value < limit for value in self.validity.values())


def _bessel_harmonic(beta: float, n: int) -> Tuple[np.ndarray, int]:
    """
    Series (−1)^{kn}J_k(β) placed at offset kn, returned with its centre index.
    """
    k_max = 1
    while k_max <= beta or abs(special.jv(k_max, beta)) >= BESSEL_FLOOR:
        k_max += 1
    k = np.arange(-k_max, k_max + 1)
    series = np.zeros(2 * k_max * n + 1)
    series[(k + k_max) * n] = (-1.0) ** (k * n % 2) * special.jv(k, beta)
    return series, k_max * n


def _full_product(p: BeatParameters, ratio: float) -> Tuple[np.ndarray, int]:
    """
    Coefficients c[q] of G·e^{−iω₀s} = Σ c[q]e^{−iω_qη}, returned with the index of q = 0.
    """
    t = math.tanh(0.5 * p.alpha_z)
    product = np.ones(1)
    centre = 0
    n = 1
    while t > 0:
        beta = 2.0 * ratio * t**n / n
        if beta < ARGUMENT_FLOOR:
            break
        series, offset = _bessel_harmonic(beta, n)
        product = np.convolve(product, series)
        centre += offset
        n += 1
    logger.debug(f"Full-product expansion used {n - 1} harmonics")

    if t > 0:
        l_max = max(1, int(math.ceil(math.log(1e-16) / math.log(t))))
    else:
        l_max = 0
    l_values = np.arange(-l_max, l_max + 1)
    gain = (-t) ** np.abs(l_values)
    return np.convolve(product, gain), centre + l_max


def bessel_spectrum(
    p: BeatParameters,
    omega0: Union[Frequency, float],
    q_range: Tuple[int, int],
    mode: Union[str, BesselMode] = BesselMode.FULL_PRODUCT,
    amplitude: complex = 1.0,
    stokes_amplitude: complex = 0.0,
) -> BesselSpectrum:
    """
    Sideband amplitudes of a long probe ℰ₀cos(ω₀s) after the dispersionless medium.

    Modes:
      - full-product: exact, G·Π_n of Bessel series over the harmonics of s(η)
      - single-bessel: (−1)^q ℰ₀ J_q((2ω₀/ω_m)tanh(αz/2))
      - linearized: (−1)^q ℰ₀ J_q(γz)
      - two-color: (−1)^q ℰ₀ J_q(γz) + (−1)^{q+1} ℰ₋₁ J_{q+1}(γz), with a
        Stokes input ℰ₋₁ at order −1

    The single-bessel and linearized modes report their small parameters in
    ``validity`` and log a warning when any is not small.

    :param q_range: Inclusive (q_min, q_max)
    :raises DomainError: For an empty order range
    """
    q_min, q_max = q_range
    if q_max < q_min:
        raise DomainError(f"Empty order range [{q_min}, {q_max}]")
    mode = BesselMode.parse(mode)
    omega0 = float(omega0.value if isinstance(omega0, Frequency) else omega0)
    ratio = omega0 / p.omega_m
    orders = np.arange(q_min, q_max + 1)
    signs = (-1.0) ** (orders % 2)
    t = math.tanh(0.5 * p.alpha_z)
    gamma_z = ratio * p.alpha_z
    validity: Dict[str, float] = {}

    if mode is BesselMode.FULL_PRODUCT:
        coefficients, centre = _full_product(p, ratio)
        index = orders + centre
        inside = (index >= 0) & (index < coefficients.size)
        values = np.zeros(orders.size, dtype=complex)
        values[inside] = coefficients[index[inside]]
        values *= amplitude
    elif mode is BesselMode.SINGLE_BESSEL:
        validity = {"tanh(αz/2)": t, "(ω0/ωm)·tanh²(αz/2)": ratio * t * t}
        values = amplitude * signs * special.jv(orders, 2.0 * ratio * t)
    elif mode is BesselMode.LINEARIZED:
        validity = {"αz": p.alpha_z, "αz·sqrt(ω0/ωm)": p.alpha_z * math.sqrt(ratio)}
        values = amplitude * signs * special.jv(orders, gamma_z)
    else:
        validity = {"αz": p.alpha_z, "αz·sqrt(ω0/ωm)": p.alpha_z * math.sqrt(ratio)}
        values = amplitude * signs * special.jv(orders, gamma_z) - (
            stokes_amplitude * signs * special.jv(orders + 1, gamma_z)
        )

    result = BesselSpectrum(orders, np.asarray(values, dtype=complex), mode, validity)
    if not result.is_valid():
        details = ", ".join(f"{name}={value:.3g}" for name, value in validity.items())
        logger.warning(f"{mode.value} expansion outside its small-parameter regime: {details}")
    return result
