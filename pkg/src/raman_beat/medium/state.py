"""
Two-level density matrix and the adiabatically prepared coherence.
"""
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from ..exceptions import DegenerateStateError, DomainError
from .parameters import MediumParameters
from .rabi import RabiFrequencies

STATE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class TwoLevelState:
    """Density matrix of the Raman pair: populations ρ_aa, ρ_bb and coherence ρ_ab."""
    rho_aa: float
    rho_bb: float
    rho_ab: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "rho_aa", float(self.rho_aa))
        object.__setattr__(self, "rho_bb", float(self.rho_bb))
        object.__setattr__(self, "rho_ab", complex(self.rho_ab))
        if abs(self.rho_aa + self.rho_bb - 1.0) > STATE_TOLERANCE:
            raise DomainError(f"Populations must sum to one, got {self.rho_aa + self.rho_bb}")
        for name in ("rho_aa", "rho_bb"):
            value = getattr(self, name)
            if value < -STATE_TOLERANCE or value > 1.0 + STATE_TOLERANCE:
                raise DomainError(f"{name} must lie in [0, 1], got {value}")
        if abs(self.rho_ab) ** 2 > self.rho_aa * self.rho_bb + STATE_TOLERANCE:
            raise DomainError(
                f"Coherence |ρ_ab|² = {abs(self.rho_ab) ** 2:.6g} exceeds "
                f"ρ_aa·ρ_bb = {self.rho_aa * self.rho_bb:.6g}"
            )

    @classmethod
    def ground(cls) -> "TwoLevelState":
        return cls(1.0, 0.0, 0j)

    @property
    def rho_ba(self) -> complex:
        return self.rho_ab.conjugate()

    @property
    def coherence_magnitude(self) -> float:
        return abs(self.rho_ab)

    @property
    def coherence_phase(self) -> float:
        return math.atan2(self.rho_ab.imag, self.rho_ab.real)

    def to_dict(self) -> dict:
        return {
            "rho_aa": self.rho_aa,
            "rho_bb": self.rho_bb,
            "rho_ab_re": self.rho_ab.real,
            "rho_ab_im": self.rho_ab.imag,
            "rho_ab_abs": abs(self.rho_ab),
            "rho_ab_phase": self.coherence_phase,
        }


@dataclass(frozen=True)
class PreparedCoherence:
    """
    Adiabatic-state parameterisation ρ_aa = cos²θ, ρ_bb = sin²θ,
    ρ_ab = e^{i(φ₀−κz)} sinθ cosθ.
    """
    theta: float
    phi0: float = 0.0
    kappa: float = 0.0
    rho0: float = field(init=False)

    def __post_init__(self):
        if abs(self.theta) > math.pi / 2 + 1e-12:
            raise DomainError(f"Mixing angle must satisfy |θ| ≤ π/2, got {self.theta}")
        object.__setattr__(self, "rho0", abs(math.sin(self.theta) * math.cos(self.theta)))

    def state_at(self, z: float = 0.0) -> TwoLevelState:
        s, c = math.sin(self.theta), math.cos(self.theta)
        return TwoLevelState(c * c, s * s, np.exp(1j * (self.phi0 - self.kappa * z)) * s * c)

    def with_kappa(self, kappa: float) -> "PreparedCoherence":
        return PreparedCoherence(self.theta, self.phi0, kappa)


def kappa_of(params: MediumParameters, state: TwoLevelState) -> float:
    """
    Phase shift per length of the prepared coherence, κ = (Nħ/ε₀c)ω_m(a₀ρ_aa + b₀ρ_bb).
    """
    return params.coupling_constant * params.omega_m * (
        params.a0 * state.rho_aa + params.b0 * state.rho_bb
    )


def prepared_coherence(
    theta: float, phi0: float = 0.0, params: Optional[MediumParameters] = None
) -> Tuple[PreparedCoherence, TwoLevelState]:
    """
    Directly prepared coherence from a mixing angle and drive phase.

    κ is filled in from ``params`` when given.
    """
    prepared = PreparedCoherence(theta, phi0)
    state = prepared.state_at(0.0)
    if params is not None:
        prepared = prepared.with_kappa(kappa_of(params, state))
    return prepared, state


def mixing_angle(omega_ext: RabiFrequencies, delta: float) -> float:
    """
    Adiabatic mixing angle, 2θ = sgn(δ)·atan2(2|Ω_ab|, |δ + Ω_aa − Ω_bb|).

    sgn(0) is taken as +1, so |θ| ≤ π/4 on the principal branch.

    :raises DegenerateStateError: If both Ω_ab and δ + Ω_aa − Ω_bb vanish
    """
    numerator = 2.0 * abs(complex(omega_ext.omega_ab))
    denominator = abs(delta + float(omega_ext.omega_aa) - float(omega_ext.omega_bb))
    if numerator == 0.0 and denominator == 0.0:
        raise DegenerateStateError(
            "Mixing angle undefined: Ω_ab = 0 and δ + Ω_aa − Ω_bb = 0"
        )
    sign = 1.0 if delta >= 0 else -1.0
    return 0.5 * sign * math.atan2(numerator, denominator)


def adiabatic_state(
    omega_ext: RabiFrequencies,
    delta: float,
    params: Optional[MediumParameters] = None,
    phi0: Optional[float] = None,
) -> Tuple[PreparedCoherence, TwoLevelState]:
    """
    Dressed state followed adiabatically from level a under the external drive.

    :param omega_ext: Stark shifts and two-photon Rabi frequency of the drives
    :param delta: Two-photon detuning δ, rad/s
    :param params: Medium used to evaluate κ (κ = 0 when omitted)
    :param phi0: Relative drive phase; defaults to arg Ω_ab
    :return: (PreparedCoherence, TwoLevelState at z = 0)
    :raises DegenerateStateError: If the mixing angle is undefined
    """
    theta = mixing_angle(omega_ext, delta)
    if phi0 is None:
        omega_ab = complex(omega_ext.omega_ab)
        phi0 = math.atan2(omega_ab.imag, omega_ab.real) if omega_ab else 0.0
    return prepared_coherence(theta, phi0, params)
