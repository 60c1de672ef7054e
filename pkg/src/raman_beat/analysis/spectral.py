"""
Sideband binning of propagated spectra.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Union

import numpy as np

from ..core.fields import Spectrum
from ..core.units import Frequency
from ..exceptions import EmptyFieldError

logger = logging.getLogger(__name__)

SIDEBAND_THRESHOLD = 1e-4
CONTINUITY_THRESHOLD = 0.5


@dataclass(frozen=True, eq=False)
class SpectralReport:
    """
    Spectrum partitioned into sideband windows [ω_q − ω_m/2, ω_q + ω_m/2).

    Powers are Σ|E_ω|²dω per window over ω > 0. Orders are significant when
    their power exceeds ``threshold`` times the strongest sideband.
    """
    orders: np.ndarray
    powers: np.ndarray
    q_as: int
    q_s: int
    continuous: bool
    valley_ratio: float
    threshold: float
    total_power: float
    stokes_fraction: float
    anti_stokes_fraction: float
    extra: Dict[str, float] = field(default_factory=dict)

    @property
    def binned_power(self) -> float:
        return float(self.powers.sum())

    def power(self, q: int) -> float:
        hits = np.nonzero(self.orders == q)[0]
        return float(self.powers[hits[0]]) if hits.size else 0.0

    def significant_orders(self) -> np.ndarray:
        return self.orders[self.powers > self.threshold * self.powers.max()]

    def to_dict(self) -> dict:
        return {
            "q_as": self.q_as,
            "q_s": self.q_s,
            "continuous": self.continuous,
            "valley_ratio": self.valley_ratio,
            "threshold": self.threshold,
            "total_power": self.total_power,
            "stokes_fraction": self.stokes_fraction,
            "anti_stokes_fraction": self.anti_stokes_fraction,
            "sidebands": {int(q): float(p) for q, p in zip(self.orders, self.powers)},
        }


def _valley_ratio(
    density: np.ndarray, labels: np.ndarray, significant: np.ndarray
) -> float:
    """
    Median over adjacent significant sideband pairs of the deepest inter-peak
    density divided by the weaker of the two peak densities.
    """
    ratios = []
    for lower, upper in zip(significant[:-1], significant[1:]):
        if upper - lower != 1:
            ratios.append(0.0)
            continue
        left = np.nonzero(labels == lower)[0]
        right = np.nonzero(labels == upper)[0]
        start = left[np.argmax(density[left])]
        stop = right[np.argmax(density[right])]
        weaker = min(density[start], density[stop])
        if weaker <= 0 or stop <= start:
            continue
        ratios.append(float(density[start : stop + 1].min() / weaker))
    return float(np.median(ratios)) if ratios else 0.0


def measure_spectrum(
    spectrum: Spectrum,
    omega0: Union[Frequency, float],
    omega_m: float,
    threshold: float = SIDEBAND_THRESHOLD,
    continuity: float = CONTINUITY_THRESHOLD,
) -> SpectralReport:
    """
    Bin a spectrum into Raman sidebands ω_q = ω₀ + qω_m.

    Every positive-frequency bin belongs to exactly one window, so the binned
    powers sum to the positive-frequency total. The spectrum is flagged
    continuous when the valleys between adjacent significant sidebands stay
    above ``continuity`` of the neighbouring peaks.

    :param spectrum: Spectrum of a real field
    :param omega0: Probe carrier, rad/s
    :param omega_m: Modulation frequency, rad/s
    :param threshold: Relative power above which a sideband counts as generated
    :param continuity: Valley-to-peak ratio above which the spectrum is continuous
    :raises EmptyFieldError: If the spectrum has no positive-frequency power
    """
    omega0 = float(omega0.value if isinstance(omega0, Frequency) else omega0)
    positive = spectrum.omega > 0
    omega = spectrum.omega[positive]
    density = spectrum.power[positive]
    total = float(density.sum() * spectrum.domega)
    if total == 0:
        raise EmptyFieldError("Spectrum has no positive-frequency content")

    labels = np.floor((omega - omega0) / omega_m + 0.5).astype(int)
    q_low = int(labels.min())
    powers = np.bincount(labels - q_low, weights=density) * spectrum.domega
    orders = np.arange(q_low, q_low + powers.size)

    significant = orders[powers > threshold * powers.max()]
    ratio = _valley_ratio(density, labels, significant) if significant.size > 1 else 0.0
    report = SpectralReport(
        orders=orders,
        powers=powers,
        q_as=int(significant.max()),
        q_s=int(significant.min()),
        continuous=bool(ratio > continuity),
        valley_ratio=ratio,
        threshold=threshold,
        total_power=total,
        stokes_fraction=float(powers[orders < 0].sum() / total),
        anti_stokes_fraction=float(powers[orders > 0].sum() / total),
    )
    logger.debug(
        f"Sidebands q_S={report.q_s} .. q_AS={report.q_as}, valley ratio {ratio:.2f}"
    )
    return report
