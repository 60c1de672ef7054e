"""
Frozen medium state seen from the frame co-moving with the coherence.
"""
import math
from dataclasses import dataclass

from ..medium.parameters import MediumParameters
from ..medium.state import TwoLevelState, kappa_of


@dataclass(frozen=True)
class FrozenMedium:
    """
    Populations and the z = 0 coherence of a medium held fixed during a probe run.

    In the co-moving frame ξ = τ − z/v with v = ω_m/κ, the coherence factor
    ρ_ab(z)·e^{iω_mτ} becomes ρ_ab(0)·e^{iω_mξ}.
    """
    rho_aa: float
    rho_bb: float
    rho_ab: complex
    kappa: float
    omega_m: float

    @classmethod
    def from_state(cls, state: TwoLevelState, params: MediumParameters) -> "FrozenMedium":
        return cls(
            state.rho_aa, state.rho_bb, state.rho_ab, kappa_of(params, state), params.omega_m
        )

    @property
    def rho_ba(self) -> complex:
        return self.rho_ab.conjugate()

    @property
    def inverse_velocity(self) -> float:
        """1/v = κ/ω_m, s/m."""
        return self.kappa / self.omega_m

    @property
    def velocity(self) -> float:
        return self.omega_m / self.kappa if self.kappa else math.inf
