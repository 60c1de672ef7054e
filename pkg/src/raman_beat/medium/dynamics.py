"""
Density-matrix evolution of the Raman pair under a slowly varying drive.
"""
import logging
from dataclasses import dataclass
from typing import Callable, List

import numpy as np
from scipy import integrate

from ..core.grids import TimeGrid
from ..exceptions import StiffnessError
from .drive import DriveConfig
from .rabi import RabiFrequencies
from .state import TwoLevelState

logger = logging.getLogger(__name__)

RabiCallback = Callable[[float], RabiFrequencies]


@dataclass(frozen=True, eq=False)
class StateTrajectory:
    """Density matrix sampled on a time grid."""
    grid: TimeGrid
    rho_aa: np.ndarray
    rho_bb: np.ndarray
    rho_ab: np.ndarray

    def __len__(self) -> int:
        return self.grid.n

    def state(self, index: int) -> TwoLevelState:
        return TwoLevelState(self.rho_aa[index], self.rho_bb[index], self.rho_ab[index])

    def states(self) -> List[TwoLevelState]:
        return [self.state(i) for i in range(self.grid.n)]

    def trace_error(self) -> float:
        return float(np.max(np.abs(self.rho_aa + self.rho_bb - 1.0)))

    def at_time(self, tau: float) -> TwoLevelState:
        """State at the grid sample nearest to τ."""
        index = int(np.argmin(np.abs(self.grid.tau - tau)))
        return self.state(index)


def _rhs(rabi: RabiCallback, delta: float, gamma1: float, gamma2: float):
    def derivative(tau: float, y: np.ndarray) -> np.ndarray:
        rho_aa, rho_bb = y[0], y[1]
        rho_ab = complex(y[2], y[3])
        rho_ba = rho_ab.conjugate()
        omega = rabi(tau)
        exchange = 1j * (omega.omega_ab * rho_ba - omega.omega_ba * rho_ab)
        d_aa = exchange.real + gamma1 * rho_bb
        d_bb = -exchange.real - gamma1 * rho_bb
        d_ab = 1j * (omega.omega_aa - omega.omega_bb + delta + 1j * gamma2) * rho_ab + (
            1j * omega.omega_ab * (rho_bb - rho_aa)
        )
        return np.array([d_aa, d_bb, d_ab.real, d_ab.imag])

    return derivative


def evolve_state(
    initial: TwoLevelState,
    drive: DriveConfig,
    rabi: RabiCallback,
    grid: TimeGrid,
    rtol: float = 1e-9,
    atol: float = 1e-12,
) -> StateTrajectory:
    """
    Integrate the density-matrix equations over the grid.

    Uses embedded 4/5 Runge-Kutta stepping with at most one grid step per
    internal step, so drive features are never stepped over.

    :param initial: State at grid.tau[0]
    :param drive: Detuning and decay rates (the drive envelopes enter through ``rabi``)
    :param rabi: Callback τ -> RabiFrequencies
    :param grid: Output grid
    :raises StiffnessError: If the integrator fails to advance
    """
    y0 = np.array([initial.rho_aa, initial.rho_bb, initial.rho_ab.real, initial.rho_ab.imag])
    tau = grid.tau
    result = integrate.solve_ivp(
        _rhs(rabi, drive.delta, drive.gamma1, drive.gamma2),
        (tau[0], tau[-1]),
        y0,
        method="RK45",
        t_eval=tau,
        rtol=rtol,
        atol=atol,
        max_step=grid.dt,
    )
    if result.status != 0:
        raise StiffnessError(f"Density-matrix integration failed: {result.message}")
    logger.debug(f"Density-matrix evolution: {result.nfev} evaluations over {grid.n} samples")
    y = result.y
    return StateTrajectory(grid, y[0], y[1], y[2] + 1j * y[3])
