"""
Continuous frequency-domain propagation of a probe spectrum through a frozen medium.
"""
import logging

import numpy as np

from ..core.fields import Spectrum
from ..exceptions import AlignmentError
from ..medium.state import TwoLevelState
from . import stepping
from .coefficients import CoefficientTables
from .frame import FrozenMedium
from .settings import PropagationConfig

logger = logging.getLogger(__name__)

ALIGNMENT_TOLERANCE = 1e-9


def modulation_bins(spectrum: Spectrum, omega_m: float) -> int:
    """
    Number of spectral bins per ω_m.

    :raises AlignmentError: If ω_m is not an integer number of bins
    """
    ratio = omega_m / spectrum.domega
    bins = int(round(ratio))
    if bins < 1 or abs(ratio - bins) > ALIGNMENT_TOLERANCE * ratio:
        raise AlignmentError(
            f"Frequency spacing {spectrum.domega:.6e} rad/s does not divide ω_m = "
            f"{omega_m:.6e} rad/s (ratio {ratio:.6f}). Build the grid with "
            f"TimeGrid.commensurate so the window spans whole modulation periods."
        )
    return bins


def propagate_frequency_domain(
    spectrum: Spectrum,
    state: TwoLevelState,
    tables: CoefficientTables,
    cfg: PropagationConfig,
) -> Spectrum:
    """
    Integrate dE_ω/dz = i(α_ωρ_aa + β_ωρ_bb − ω/v)E_ω + ig_ωρ_ba E_{ω−ω_m} + ih_ωρ_ab E_{ω+ω_m}.

    The positive-frequency half is propagated; the negative half is restored by
    Hermitian symmetry. Content that would shift below ω = 0 is dropped.

    :param spectrum: Input spectrum on a grid commensurate with ω_m
    :param state: Medium state, frozen along z, with its coherence referenced at z = 0
    :param tables: Coefficients of the medium
    :param cfg: z range and stepping
    :return: Spectrum at z_end in the co-moving frame
    :raises AlignmentError: If ω ± ω_m do not land on grid points
    :raises StepSizeError: If a configured dz violates the stability guard
    """
    medium = FrozenMedium.from_state(state, tables.params)
    shift = modulation_bins(spectrum, medium.omega_m)
    omega = spectrum.omega
    positive = np.flatnonzero(omega > 0)
    w = omega[positive]
    coefficients = tables.on_axis(w)

    diagonal = (
        coefficients["alpha"] * medium.rho_aa
        + coefficients["beta"] * medium.rho_bb
        - w * medium.inverse_velocity
    )
    raise_order = 1j * coefficients["g"] * medium.rho_ba
    lower_order = 1j * coefficients["h"] * medium.rho_ab

    def stepped(y: np.ndarray) -> np.ndarray:
        result = np.zeros_like(y)
        result[shift:] += raise_order[shift:] * y[:-shift]
        result[:-shift] += lower_order[:-shift] * y[shift:]
        return result

    def advance(y: np.ndarray, h: float) -> np.ndarray:
        return np.exp(1j * diagonal * h) * y

    rate = float(np.max(np.abs(raise_order)) + np.max(np.abs(lower_order)))
    y = stepping.run(spectrum.amplitude[positive], cfg.z_end, rate, stepped, advance, cfg)

    amplitude = np.zeros(omega.size, dtype=complex)
    amplitude[positive] = y
    zero = int(np.argmin(np.abs(omega)))
    mirror = 2 * zero - positive
    inside = mirror >= 0
    amplitude[mirror[inside]] = np.conj(y[inside])
    logger.info(
        f"Frequency-domain propagation to z={cfg.z_end:.3e} m over {positive.size} bins "
        f"({shift} bins per ω_m)"
    )
    return Spectrum(omega, amplitude)
