"""
Sideband envelopes: window decomposition, resynthesis and propagation.
"""
import logging
import math
from typing import Optional, Tuple, Union

import numpy as np
from scipy import fft

from ..core.fields import AnalyticField, SampledField
from ..core.grids import TimeGrid
from ..core.sidebands import SidebandSet
from ..core.transforms import analytic_signal
from ..exceptions import DomainError
from ..medium.state import TwoLevelState
from . import stepping
from .coefficients import CoefficientTables
from .frame import FrozenMedium
from .settings import PropagationConfig

logger = logging.getLogger(__name__)

CONTENT_FLOOR = 1e-13


def _occupied_orders(
    coefficients: np.ndarray, omega: np.ndarray, omega0: float, omega_m: float
) -> Tuple[int, int]:
    power = np.abs(coefficients) ** 2
    occupied = omega[(omega > 0) & (power > CONTENT_FLOOR * power.max())]
    if occupied.size == 0:
        raise DomainError("Field has no positive-frequency content to decompose")
    q_min = math.floor((occupied.min() - omega0) / omega_m + 0.5)
    q_max = math.floor((occupied.max() - omega0) / omega_m + 0.5)
    while omega0 + q_min * omega_m <= 0:
        q_min += 1
    return q_min, q_max


def grid_orders(grid: TimeGrid, omega0: float, omega_m: float) -> Tuple[int, int]:
    """Orders whose windows lie in the positive band of ``grid``, for combs that must grow."""
    q_min = math.floor(-omega0 / omega_m) + 1
    q_max = math.floor((float(np.max(grid.omega())) - omega0) / omega_m - 0.5)
    if q_max < q_min:
        raise DomainError(
            f"Grid band {np.max(grid.omega()):.4e} rad/s holds no sideband of ω₀ = {omega0:.4e} rad/s"
        )
    return q_min, q_max


def decompose_sidebands(
    field: Union[AnalyticField, SampledField],
    omega0: float,
    omega_m: float,
    q_range: Optional[Tuple[int, int]] = None,
) -> SidebandSet:
    """
    Split a field into envelopes E_q(τ) with ℰ(τ) = Σ_q E_q(τ)e^{−iω_qτ}.

    Sideband q owns the spectral window [ω_q − ω_m/2, ω_q + ω_m/2).

    :param field: Real field (converted to its analytic signal) or analytic field
    :param q_range: Inclusive order range; defaults to the orders holding spectral content
    """
    if isinstance(field, SampledField):
        field = analytic_signal(field)
    grid = field.grid
    coefficients = fft.ifft(field.e_complex)
    omega = grid.omega()
    if q_range is None:
        q_range = _occupied_orders(coefficients, omega, omega0, omega_m)
    q_min, q_max = q_range
    tau = grid.tau
    env = np.empty((q_max - q_min + 1, grid.n), dtype=complex)
    for row, q in enumerate(range(q_min, q_max + 1)):
        centre = omega0 + q * omega_m
        window = (omega >= centre - 0.5 * omega_m) & (omega < centre + 0.5 * omega_m)
        env[row] = fft.fft(np.where(window, coefficients, 0.0)) * np.exp(1j * centre * tau)
    return SidebandSet(omega0, omega_m, q_min, q_max, env, grid)


def synthesize_field(sidebands: SidebandSet, grid: Optional[TimeGrid] = None) -> AnalyticField:
    """
    ℰ(τ) = Σ_q E_q(τ)e^{−iω_qτ}.

    :param grid: Needed for constant envelopes; sampled combs use their own grid
    """
    grid = sidebands.grid or grid
    if grid is None:
        raise DomainError("A time grid is required to synthesise constant envelopes")
    tau = grid.tau
    carriers = np.exp(-1j * np.multiply.outer(sidebands.frequencies, tau))
    env = sidebands.env if sidebands.is_sampled else sidebands.env[:, None]
    return AnalyticField(grid, np.sum(env * carriers, axis=0))


def _neighbour_coupling(up: np.ndarray, down: np.ndarray):
    """N(y) = up_q·y_{q−1} + down_q·y_{q+1} along axis 0."""

    def stepped(y: np.ndarray) -> np.ndarray:
        result = np.zeros_like(y)
        result[1:] += up[1:] * y[:-1]
        result[:-1] += down[:-1] * y[1:]
        return result

    return stepped


def propagate_sidebands(
    sidebands: SidebandSet,
    state: TwoLevelState,
    tables: CoefficientTables,
    cfg: PropagationConfig,
    full: bool = False,
) -> SidebandSet:
    """
    Propagate sideband envelopes through a frozen medium in the co-moving frame.

    The slowly varying envelope mode integrates
    dE_q/dz = i[(α_qρ_aa + β_qρ_bb − ω_q/v)E_q + g_qρ_ba E_{q−1} + h_qρ_ab E_{q+1}]
    independently at each τ. The full mode adds the group-velocity and GVD
    terms with first and second τ-derivatives; with constant coefficients each
    envelope frequency ν then evolves on its own, with every coefficient f_q
    replaced by f_q − νf′_q + ½ν²f″_q.

    :param full: Include the τ-derivative terms (requires sampled envelopes)
    :raises DomainError: For full mode on constant envelopes
    :raises StepSizeError: If a configured dz violates the stability guard
    """
    if full and not sidebands.is_sampled:
        raise DomainError("Full sideband propagation needs envelopes sampled over τ")
    medium = FrozenMedium.from_state(state, tables.params)
    c = tables.sidebands(sidebands.frequencies)
    inverse_v = medium.inverse_velocity
    column = (slice(None), None)

    if not full:
        diagonal = c.alpha * medium.rho_aa + c.beta * medium.rho_bb - c.frequencies * inverse_v
        up = 1j * c.g * medium.rho_ba
        down = 1j * c.h * medium.rho_ab
        if sidebands.is_sampled:
            diagonal, up, down = diagonal[column], up[column], down[column]
        y0 = sidebands.env
        transform = None
    else:
        grid = sidebands.grid
        nu = grid.omega()
        spectra = fft.fft(sidebands.env, axis=1)
        content = np.max(np.abs(spectra), axis=0)
        active = content > CONTENT_FLOOR * content.max() if content.max() > 0 else content > 0
        nu = nu[active]

        def taylor(f, f1, f2):
            return f[column] - nu * f1[column] + 0.5 * nu**2 * f2[column]

        diagonal = (
            taylor(c.alpha, c.alpha1, c.alpha2) * medium.rho_aa
            + taylor(c.beta, c.beta1, c.beta2) * medium.rho_bb
            - (c.frequencies[column] - nu) * inverse_v
        )
        up = 1j * medium.rho_ba * taylor(c.g, c.g1, c.g2)
        down = 1j * medium.rho_ab * taylor(c.h, c.h1, c.h2)
        y0 = spectra[:, active]
        transform = active

    def advance(y: np.ndarray, h: float) -> np.ndarray:
        return np.exp(1j * diagonal * h) * y

    rate = float(np.max(np.abs(up)) + np.max(np.abs(down))) if np.size(up) else 0.0
    y = stepping.run(y0, cfg.z_end, rate, _neighbour_coupling(up, down), advance, cfg)

    if transform is not None:
        spectra = np.zeros((y.shape[0], sidebands.grid.n), dtype=complex)
        spectra[:, transform] = y
        y = fft.ifft(spectra, axis=1)
    logger.info(
        f"Sideband propagation ({'full' if full else 'envelope'}) of orders "
        f"[{sidebands.q_min}, {sidebands.q_max}] to z={cfg.z_end:.3e} m"
    )
    return sidebands.with_env(y)
