"""
Stark shifts and two-photon Rabi frequencies of a discrete sideband comb.

Only stationary pairings survive: a line with itself for the Stark shifts,
neighbouring lines q, q+1 for the Rabi frequencies.
"""
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from scipy import integrate
from scipy.constants import hbar

from ..core.sidebands import SidebandSet
from .levels import LevelTable, polarizability
from .parameters import MediumParameters


@dataclass(frozen=True, eq=False)
class RabiFrequencies:
    """Ω_aa, Ω_bb (real) and Ω_ab, Ω_ba (complex), rad/s; scalars or arrays over τ."""
    omega_aa: Union[float, np.ndarray]
    omega_bb: Union[float, np.ndarray]
    omega_ab: Union[complex, np.ndarray]
    omega_ba: Union[complex, np.ndarray]

    @classmethod
    def zero(cls) -> "RabiFrequencies":
        return cls(0.0, 0.0, 0j, 0j)

    def at(self, index: int) -> "RabiFrequencies":
        """Values at one τ sample of an array-valued set."""
        return RabiFrequencies(
            float(np.real(np.atleast_1d(self.omega_aa)[index])),
            float(np.real(np.atleast_1d(self.omega_bb)[index])),
            complex(np.atleast_1d(self.omega_ab)[index]),
            complex(np.atleast_1d(self.omega_ba)[index]),
        )


def rabi_and_stark(
    sidebands: SidebandSet, medium: Union[MediumParameters, LevelTable]
) -> RabiFrequencies:
    """
    Stationary reduction of the Stark shifts and two-photon Rabi frequencies.

    With medium parameters: Ω_aa = ½Σa_q|E_q|², Ω_bb = ½Σb_q|E_q|²,
    Ω_ab = ½Σd_q E_q E*_{q+1} and Ω_ba = Ω_ab*. With a level table the exact
    polarizability pairs (1/8ħ)[α(ω_q) + α(−ω_{q'})] are used.

    :param sidebands: Constant or sampled comb
    :param medium: MediumParameters or LevelTable
    :return: RabiFrequencies (arrays over τ for sampled combs)
    """
    env = sidebands.env
    omegas = sidebands.frequencies
    if sidebands.is_sampled:
        shape = (-1, 1)
    else:
        shape = (-1,)
    power = np.abs(env) ** 2
    pair = env[:-1] * np.conj(env[1:])  # E_q E*_{q+1}

    if isinstance(medium, LevelTable):
        weights_aa = np.empty(omegas.size)
        weights_bb = np.empty(omegas.size)
        weights_ab = np.empty(max(omegas.size - 1, 0))
        weights_ba = np.empty(max(omegas.size - 1, 0))
        values = [polarizability(medium, w) for w in omegas]
        negatives = [polarizability(medium, -w) for w in omegas]
        for i in range(omegas.size):
            weights_aa[i] = (values[i].alpha_aa + negatives[i].alpha_aa) / (8.0 * hbar)
            weights_bb[i] = (values[i].alpha_bb + negatives[i].alpha_bb) / (8.0 * hbar)
        for i in range(omegas.size - 1):
            weights_ab[i] = (values[i].alpha_ab + negatives[i + 1].alpha_ab) / (8.0 * hbar)
            weights_ba[i] = (values[i + 1].alpha_ba + negatives[i].alpha_ba) / (8.0 * hbar)
        omega_aa = np.sum(weights_aa.reshape(shape) * power, axis=0)
        omega_bb = np.sum(weights_bb.reshape(shape) * power, axis=0)
        omega_ab = np.sum(weights_ab.reshape(shape) * pair, axis=0)
        omega_ba = np.sum(weights_ba.reshape(shape) * np.conj(pair), axis=0)
    else:
        coefficients = medium.evaluate(omegas)
        omega_aa = 0.5 * np.sum(coefficients["a"].reshape(shape) * power, axis=0)
        omega_bb = 0.5 * np.sum(coefficients["b"].reshape(shape) * power, axis=0)
        omega_ab = 0.5 * np.sum(coefficients["d"][:-1].reshape(shape) * pair, axis=0)
        omega_ba = np.conj(omega_ab)

    if not sidebands.is_sampled:
        return RabiFrequencies(
            float(omega_aa), float(omega_bb), complex(omega_ab), complex(omega_ba)
        )
    return RabiFrequencies(omega_aa, omega_bb, omega_ab, omega_ba)


def _lobe(weight, line, tau: float, sign: int, span: float = 12.0) -> complex:
    """
    ∫ f(ω) E_ω e^{−iωτ} dω over the positive (sign=+1) or negative (sign=−1)
    spectral lobe of one Gaussian line, with E_ω = (1/2π)Ẽ(ω − ω_q).
    """
    limit = span / line.decay_time

    if sign > 0:
        def integrand(nu):
            return (
                weight(line.frequency + nu)
                * line.spectral_lobe(nu)
                * np.exp(-1j * nu * tau)
                / (2.0 * np.pi)
            )
        phase = np.exp(-1j * line.frequency * tau)
    else:
        def integrand(nu):
            return (
                weight(-line.frequency - nu)
                * np.conj(line.spectral_lobe(nu))
                * np.exp(1j * nu * tau)
                / (2.0 * np.pi)
            )
        phase = np.exp(1j * line.frequency * tau)

    options = {"limit": 400, "epsabs": 0.0, "epsrel": 1e-11, "points": [0.0]}
    real, _ = integrate.quad(lambda nu: float(np.real(integrand(nu))), -limit, limit, **options)
    imag, _ = integrate.quad(lambda nu: float(np.imag(integrand(nu))), -limit, limit, **options)
    return phase * complex(real, imag)


def rabi_quadrature(
    levels: LevelTable, lines: Sequence, tau: float, omega_m: float
) -> RabiFrequencies:
    """
    Continuous double-integral Stark shifts and Rabi frequencies at one τ,
    restricted to stationary lobe pairings, by adaptive quadrature.

    :param levels: Level table providing the polarizability matrix
    :param lines: Gaussian DriveLine objects, consecutive lines spaced by ω_m
    :param tau: Local time, s
    :param omega_m: Modulation frequency, rad/s
    """
    lines = sorted(lines, key=lambda line: line.frequency)

    def alpha(name):
        return lambda w: getattr(polarizability(levels, w), name)

    def unit(_):
        return 1.0

    total = {"aa": 0j, "bb": 0j, "ab": 0j, "ba": 0j}
    for line in lines:
        plain_pos = _lobe(unit, line, tau, +1)
        plain_neg = _lobe(unit, line, tau, -1)
        for key, name in (("aa", "alpha_aa"), ("bb", "alpha_bb")):
            total[key] += _lobe(alpha(name), line, tau, +1) * np.conj(plain_pos)
            total[key] += _lobe(alpha(name), line, tau, -1) * np.conj(plain_neg)

    shift_down = np.exp(-1j * omega_m * tau)
    for lower, upper in zip(lines[:-1], lines[1:]):
        total["ab"] += (
            _lobe(alpha("alpha_ab"), lower, tau, +1) * shift_down * np.conj(_lobe(unit, upper, tau, +1))
        )
        total["ab"] += (
            _lobe(alpha("alpha_ab"), upper, tau, -1) * shift_down * np.conj(_lobe(unit, lower, tau, -1))
        )
        total["ba"] += (
            _lobe(alpha("alpha_ba"), upper, tau, +1) * np.conj(shift_down) * np.conj(_lobe(unit, lower, tau, +1))
        )
        total["ba"] += (
            _lobe(alpha("alpha_ba"), lower, tau, -1) * np.conj(shift_down) * np.conj(_lobe(unit, upper, tau, -1))
        )

    scale = 1.0 / (8.0 * hbar)
    return RabiFrequencies(
        float((scale * total["aa"]).real),
        float((scale * total["bb"]).real),
        complex(scale * total["ab"]),
        complex(scale * total["ba"]),
    )
