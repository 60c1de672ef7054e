"""
Optimal medium length for GVD-assisted compression and the improvement it brings.
"""
import logging
import math
from dataclasses import asdict, dataclass, replace
from typing import Dict, Optional, Union

from scipy import optimize

from ..core.units import Frequency
from ..exceptions import DomainError
from ..medium.parameters import MediumParameters
from ..medium.state import TwoLevelState

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GvdReport:
    """
    :param k2: Dominant-term k″(ω₀), s²/m
    :param k2_full: k″(ω₀) including the ω₀a″ and ω₀b″ terms, s²/m
    :param L_opt: Optimal length, m (None when k″ ≤ 0)
    :param gamma: Compression factor with GVD, 1 + 2(ω₀/ω_m)sinh(αL)
    :param gamma0: Dispersionless compression factor e^{αL}
    :param D: Improvement Γ/Γ₀
    :param bandwidth: Generated bandwidth 2ω₀sinh(αL), rad/s
    :param small_length_D: Small-αL estimate 1 + 2γL with γ = (ω₀/ω_m)α
    :param run_length: Length the delay spread is evaluated at, m
    :param delay_spread: Group-delay spread 2ω₀k″(cosh αz − 1)/α the growing
        bandwidth accumulates over run_length, s
    :param half_period: π/ω_m, the spread the optimum condition asks for, s
    """
    k2: float
    k2_full: float
    L_opt: Optional[float]
    gamma: Optional[float]
    gamma0: Optional[float]
    D: Optional[float]
    bandwidth: Optional[float]
    small_length_D: Optional[float]
    run_length: Optional[float] = None
    delay_spread: Optional[float] = None
    half_period: Optional[float] = None

    @property
    def has_optimum(self) -> bool:
        return self.L_opt is not None

    def to_dict(self) -> Dict[str, Optional[float]]:
        return asdict(self)


def gvd_analysis(
    params: MediumParameters,
    state: TwoLevelState,
    omega0: Union[Frequency, float],
    alpha: float,
    run_length: Optional[float] = None,
) -> GvdReport:
    """
    Solve L·sinh(αL) = π/(2ω_mω₀k″) for the length at which the group-delay
    spread of the generated bandwidth equals half a modulation period.

    k″(ω₀) = (2Nħ/ε₀c)(a′ρ_aa + b′ρ_bb) with the derivatives taken at ω₀.

    :param run_length: Propagation length to evaluate the accumulated delay spread at, m
    :raises DomainError: If α is not positive
    """
    if not alpha > 0:
        raise DomainError(f"Coupling parameter α must be positive, got {alpha}")
    omega0 = float(omega0.value if isinstance(omega0, Frequency) else omega0)
    C = params.coupling_constant
    v = params.coefficients_at(omega0)
    k2 = 2.0 * C * (v.a1 * state.rho_aa + v.b1 * state.rho_bb)
    k2_full = C * (
        (2.0 * v.a1 + omega0 * v.a2) * state.rho_aa + (2.0 * v.b1 + omega0 * v.b2) * state.rho_bb
    )
    if k2 <= 0:
        logger.warning(f"k″ = {k2:.3e} s²/m is not positive: no finite optimal length")
        return GvdReport(k2, k2_full, None, None, None, None, None, None)

    target = math.pi / (2.0 * params.omega_m * omega0 * k2)

    def residual(length: float) -> float:
        return length * math.sinh(alpha * length) - target

    upper = 1.0 / alpha
    while residual(upper) < 0:
        upper *= 2.0
    length = optimize.brentq(residual, 0.0, upper, xtol=1e-15, rtol=1e-12)

    ratio = omega0 / params.omega_m
    sinh = math.sinh(alpha * length)
    gamma = 1.0 + 2.0 * ratio * sinh
    gamma0 = math.exp(alpha * length)
    report = GvdReport(
        k2=k2,
        k2_full=k2_full,
        L_opt=length,
        gamma=gamma,
        gamma0=gamma0,
        D=gamma / gamma0,
        bandwidth=2.0 * omega0 * sinh,
        small_length_D=1.0 + 2.0 * ratio * alpha * length,
    )
    if run_length is not None:
        spread = 2.0 * omega0 * k2 * (math.cosh(alpha * run_length) - 1.0) / alpha
        report = replace(
            report,
            run_length=float(run_length),
            delay_spread=spread,
            half_period=math.pi / params.omega_m,
        )
        logger.info(
            f"Delay spread at z={run_length * 1e6:.2f} μm: {spread:.3e} s "
            f"of π/ω_m = {report.half_period:.3e} s"
        )
    logger.info(f"GVD optimum: L={length * 1e6:.2f} μm, Γ={gamma:.2f}, D={report.D:.3f}")
    return report
