"""
z-stepping shared by the propagators.

Each propagator splits its right-hand side into a diagonal part, applied exactly
as an integrating factor, and a remainder stepped with fourth-order Runge-Kutta.
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import integrate

from ..exceptions import StepSizeError, StiffnessError
from .settings import PropagationConfig

logger = logging.getLogger(__name__)

Operator = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class StepPlan:
    steps: int
    dz: float

    @property
    def z_end(self) -> float:
        return self.steps * self.dz


def plan_steps(z_end: float, rate: float, cfg: PropagationConfig) -> StepPlan:
    """
    Fixed z steps obeying dz·rate < stability_limit.

    :param rate: Largest magnitude of the stepped (non-diagonal) operator, m⁻¹
    :raises StepSizeError: If a configured dz violates the guard
    """
    if z_end == 0:
        return StepPlan(0, 0.0)
    limit = cfg.stability_limit
    if cfg.dz is None:
        steps = max(1, math.ceil(z_end * rate / limit * (1.0 + 1e-9)))
        return StepPlan(steps, z_end / steps)
    if cfg.dz * rate >= limit:
        raise StepSizeError(
            f"dz = {cfg.dz:.3e} m violates the stability guard: dz·rate = "
            f"{cfg.dz * rate:.3g} ≥ {limit:g}. Use dz < {limit / rate:.3e} m "
            f"or leave dz unset."
        )
    steps = max(1, math.ceil(z_end / cfg.dz - 1e-9))
    return StepPlan(steps, z_end / steps)


def _identity(values: np.ndarray, h: float) -> np.ndarray:
    return values


def lawson_rk4(
    y0: np.ndarray,
    plan: StepPlan,
    stepped: Operator,
    advance: Callable[[np.ndarray, float], np.ndarray] = _identity,
) -> np.ndarray:
    """
    Integrating-factor fourth-order Runge-Kutta for y' = L·y + N(y).

    :param stepped: N(y), the part handled by Runge-Kutta
    :param advance: (y, h) -> e^{Lh}y, the exactly integrated part
    """
    y = np.array(y0, dtype=complex, copy=True)
    h = plan.dz
    for _ in range(plan.steps):
        k1 = stepped(y)
        half = advance(y, 0.5 * h)
        k2 = stepped(advance(y + 0.5 * h * k1, 0.5 * h))
        k3 = stepped(half + 0.5 * h * k2)
        k4 = stepped(advance(y, h) + h * advance(k3, 0.5 * h))
        y = advance(y + h / 6.0 * k1, h) + h / 6.0 * (advance(2.0 * (k2 + k3), 0.5 * h) + k4)
    return y


def adaptive_interaction(
    y0: np.ndarray,
    z_end: float,
    stepped: Operator,
    advance: Callable[[np.ndarray, float], np.ndarray],
    cfg: PropagationConfig,
) -> np.ndarray:
    """
    Embedded 4/5 stepping of the interaction-picture variable u = e^{−Lz}y.
    """
    shape = np.shape(y0)

    def derivative(z, u):
        y = advance(u.reshape(shape), z)
        return advance(stepped(y), -z).ravel()

    result = integrate.solve_ivp(
        derivative,
        (0.0, z_end),
        np.asarray(y0, dtype=complex).ravel(),
        method="RK45",
        rtol=cfg.rtol,
        atol=cfg.atol,
        t_eval=[z_end],
    )
    if result.status != 0:
        raise StiffnessError(f"Adaptive propagation failed: {result.message}")
    logger.debug(f"Adaptive propagation used {result.nfev} evaluations")
    return advance(result.y[:, -1].reshape(shape), z_end)


def run(
    y0: np.ndarray,
    z_end: float,
    rate: float,
    stepped: Operator,
    advance: Callable[[np.ndarray, float], np.ndarray],
    cfg: PropagationConfig,
) -> np.ndarray:
    """Integrate over [0, z_end] with the fixed-step or adaptive scheme the config selects."""
    if z_end == 0:
        return np.array(y0, dtype=complex, copy=True)
    if cfg.adaptive:
        return adaptive_interaction(y0, z_end, stepped, advance, cfg)
    plan = plan_steps(z_end, rate, cfg)
    logger.debug(f"Fixed stepping: {plan.steps} steps of {plan.dz:.3e} m")
    return lawson_rk4(y0, plan, stepped, advance)
