"""
Self-consistent preparation: the drive comb and the medium state evolved together along z.
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from ..core.grids import TimeGrid
from ..core.sidebands import SidebandSet
from ..exceptions import CombOverflowError, ValidationError
from ..medium.drive import DriveConfig
from ..medium.dynamics import StateTrajectory, evolve_state
from ..medium.parameters import MediumParameters
from ..medium.rabi import RabiFrequencies, rabi_and_stark
from ..medium.state import TwoLevelState
from . import stepping
from .coefficients import sideband_coefficients
from .settings import PropagationConfig

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CascadeResult:
    """Medium trajectories and drive combs at each density-matrix update plane."""
    z: np.ndarray
    trajectories: List[StateTrajectory]
    combs: List[SidebandSet]
    grid: TimeGrid

    @property
    def final_comb(self) -> SidebandSet:
        return self.combs[-1]

    def peak_index(self) -> int:
        """τ index of the peak total drive intensity at the entrance."""
        return int(np.argmax(np.sum(np.abs(self.combs[0].env) ** 2, axis=0)))

    def state_at_peak(self, plane: int = 0) -> TwoLevelState:
        return self.trajectories[plane].state(self.peak_index())

    def coherence_map(self) -> np.ndarray:
        """ρ_ab over (z plane, τ)."""
        return np.array([trajectory.rho_ab for trajectory in self.trajectories])

    def photon_flux(self) -> np.ndarray:
        return np.array([comb.photon_flux() for comb in self.combs])


def _interpolated(rabi: RabiFrequencies, tau: np.ndarray):
    """Callback τ -> RabiFrequencies by linear interpolation of sampled values."""
    aa = np.asarray(rabi.omega_aa, dtype=float)
    bb = np.asarray(rabi.omega_bb, dtype=float)
    ab = np.asarray(rabi.omega_ab, dtype=complex)
    ba = np.asarray(rabi.omega_ba, dtype=complex)

    def callback(t: float) -> RabiFrequencies:
        return RabiFrequencies(
            float(np.interp(t, tau, aa)),
            float(np.interp(t, tau, bb)),
            complex(np.interp(t, tau, ab.real), np.interp(t, tau, ab.imag)),
            complex(np.interp(t, tau, ba.real), np.interp(t, tau, ba.imag)),
        )

    return callback


def check_comb_edges(comb: SidebandSet, threshold: float) -> None:
    """
    :raises CombOverflowError: If an outer sideband that could still be extended
        holds more than ``threshold`` of the peak amplitude
    """
    amplitude = np.sqrt(comb.powers())
    peak = amplitude.max()
    if peak == 0:
        return
    edges = [(comb.q_max, amplitude[-1])]
    if comb.omega0 + (comb.q_min - 1) * comb.omega_m > 0:
        edges.append((comb.q_min, amplitude[0]))
    for q, value in edges:
        if value > threshold * peak:
            raise CombOverflowError(
                f"Sideband q={q} holds {value / peak:.2e} of the peak amplitude "
                f"(limit {threshold:.0e}). Enlarge the comb beyond [{comb.q_min}, {comb.q_max}]."
            )


def evolve_medium(
    comb: SidebandSet,
    params: MediumParameters,
    drive: DriveConfig,
    rtol: float = 1e-9,
    atol: float = 1e-12,
) -> StateTrajectory:
    """
    Density matrix over the comb's τ grid, starting in level a, under the
    Stark shifts and Rabi frequency of the sampled comb.

    A level table attached to ``params`` sets the polarizability weights.
    """
    medium = params.levels if params.levels is not None else params
    rabi = rabi_and_stark(comb, medium)
    return evolve_state(
        TwoLevelState.ground(),
        drive,
        _interpolated(rabi, comb.grid.tau),
        comb.grid,
        rtol=rtol,
        atol=atol,
    )


def _propagate_comb(
    comb: SidebandSet, trajectory: StateTrajectory, params: MediumParameters, dz: float,
    cfg: PropagationConfig,
) -> SidebandSet:
    """Envelope equation over dz with ρ(τ) held at its value on the current plane."""
    c = sideband_coefficients(params, comb.frequencies)
    column = (slice(None), None)
    diagonal = c.alpha[column] * trajectory.rho_aa + c.beta[column] * trajectory.rho_bb
    rho_ab = trajectory.rho_ab
    up = 1j * c.g[column] * np.conj(rho_ab)
    down = 1j * c.h[column] * rho_ab

    def stepped(y: np.ndarray) -> np.ndarray:
        result = np.zeros_like(y)
        result[1:] += up[1:] * y[:-1]
        result[:-1] += down[:-1] * y[1:]
        return result

    def advance(y: np.ndarray, h: float) -> np.ndarray:
        return np.exp(1j * diagonal * h) * y

    rate = float(np.max(np.abs(up)) + np.max(np.abs(down)))
    segment = PropagationConfig(
        z_end=dz, dz=None, stability_limit=cfg.stability_limit, adaptive=cfg.adaptive,
        rtol=cfg.rtol, atol=cfg.atol,
    )
    return comb.with_env(stepping.run(comb.env, dz, rate, stepped, advance, segment))


def cascade_selfconsistent(
    drive: DriveConfig,
    params: MediumParameters,
    cfg: PropagationConfig,
    initial: Optional[SidebandSet] = None,
) -> CascadeResult:
    """
    Alternate density-matrix evolution over τ and envelope propagation over z.

    On each plane the medium is evolved from the ground state under the local
    drive comb; the comb is then advanced to the next plane with that ρ(τ).
    The probe is not part of this run.

    :param drive: Two drive lines (orders 0 and 1) with detuning and decay rates
    :param params: Medium parameters (a level table, when attached, sets the Rabi weights)
    :param cfg: z_end, the τ grid, cascade_orders, medium_step and overflow_threshold
    :param initial: Optional entrance comb (defaults to the two drive envelopes)
    :raises ValidationError: Without a τ grid, or if the drive separation is not ω_m
    :raises CombOverflowError: If generated sidebands reach the comb edge
    """
    if cfg.grid is None:
        raise ValidationError("The cascade needs a τ grid in the propagation config")
    drive.check_modulation(params.omega_m)
    q_min, q_max = cfg.cascade_orders
    comb = initial or drive.sidebands(cfg.grid, q_min, q_max, params.omega_m)

    planes = max(1, math.ceil(cfg.z_end / cfg.medium_step - 1e-9)) if cfg.z_end > 0 else 0
    dz = cfg.z_end / planes if planes else 0.0
    z = np.linspace(0.0, cfg.z_end, planes + 1)

    trajectories: List[StateTrajectory] = []
    combs: List[SidebandSet] = [comb]
    for plane in range(planes + 1):
        trajectory = evolve_medium(comb, params, drive, cfg.ode_rtol, cfg.ode_atol)
        trajectories.append(trajectory)
        if plane == planes:
            break
        comb = _propagate_comb(comb, trajectory, params, dz, cfg)
        check_comb_edges(comb, cfg.overflow_threshold)
        combs.append(comb)
        logger.debug(
            f"Cascade plane {plane + 1}/{planes}: z={z[plane + 1]:.3e} m, "
            f"max |ρ_ab|={np.max(np.abs(trajectory.rho_ab)):.3f}"
        )

    result = CascadeResult(z, trajectories, combs, cfg.grid)
    logger.info(
        f"Cascade to z={cfg.z_end:.3e} m over {planes} planes; |ρ_ab| at drive peak "
        f"{result.state_at_peak().coherence_magnitude:.3f}"
    )
    return result
