"""
Propagation and coupling coefficients in the three formulations.

Frequency tables: α_ω = Cω·a_ω, β_ω = Cω·b_ω, g_ω = Cω·d_{ω−ω_m}, h_ω = Cω·d_ω
with C = Nħ/ε₀c. Sideband tables carry these with their first and second
ω-derivatives. Time-domain constants follow from expanding α, β about ω₀,
g about ω₁ and h about ω₋₁; the off-resonant set keeps the dominant terms.
"""
import logging
from dataclasses import asdict, dataclass, field, replace
from typing import Dict, Optional

import numpy as np

from ..medium.parameters import MediumParameters

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TimeDomainCoefficients:
    """Constants A, B, K, Q (m⁻¹), A1, B1, K1, Q1 (s/m) and A2, B2, K2, Q2 (s²/m)."""
    A: float
    B: float
    K: float
    Q: float
    A1: float
    B1: float
    K1: float
    Q1: float
    A2: float
    B2: float
    K2: float
    Q2: float
    reduced: bool = False

    def ablated(
        self,
        include_group_velocity: bool = True,
        include_gvd: bool = True,
        include_coupling_gvd: bool = True,
    ) -> "TimeDomainCoefficients":
        """Copy with the time-varying group velocity (K1, Q1), GVD (A2, B2) or
        coupling GVD (K2, Q2) terms removed."""
        updates: Dict[str, float] = {}
        if not include_group_velocity:
            updates.update(K1=0.0, Q1=0.0)
        if not include_gvd:
            updates.update(A2=0.0, B2=0.0)
        if not include_coupling_gvd:
            updates.update(K2=0.0, Q2=0.0)
        return replace(self, **updates)

    def relative_difference(self, other: "TimeDomainCoefficients") -> Dict[str, float]:
        """Per-constant |self − other|/|other| (absolute difference where other is zero)."""
        result = {}
        for name in ("A", "B", "K", "Q", "A1", "B1", "K1", "Q1", "A2", "B2", "K2", "Q2"):
            mine, theirs = getattr(self, name), getattr(other, name)
            scale = abs(theirs)
            result[name] = abs(mine - theirs) / scale if scale else abs(mine - theirs)
        return result

    def to_dict(self) -> Dict[str, float]:
        return asdict(self)


@dataclass(frozen=True, eq=False)
class SidebandCoefficients:
    """α, β, g, h and their first and second ω-derivatives at each sideband frequency."""
    frequencies: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    g: np.ndarray
    h: np.ndarray
    alpha1: np.ndarray
    beta1: np.ndarray
    g1: np.ndarray
    h1: np.ndarray
    alpha2: np.ndarray
    beta2: np.ndarray
    g2: np.ndarray
    h2: np.ndarray


def _with_derivatives(C: float, omega: float, f: float, f1: float, f2: float):
    """Value, first and second derivative of C·ω·f(ω)."""
    return C * omega * f, C * (f + omega * f1), C * (2.0 * f1 + omega * f2)


def sideband_coefficients(params: MediumParameters, frequencies) -> SidebandCoefficients:
    """
    :raises SingularityError: If a level table is attached and a sideband is resonant
    """
    frequencies = np.atleast_1d(np.asarray(frequencies, dtype=float))
    C = params.coupling_constant
    columns = {name: np.empty(frequencies.size) for name in (
        "alpha", "beta", "g", "h", "alpha1", "beta1", "g1", "h1", "alpha2", "beta2", "g2", "h2"
    )}
    for i, w in enumerate(frequencies):
        here = params.coefficients_at(w)
        below = params.coefficients_at(w - params.omega_m)
        for name, (f, f1, f2) in (
            ("alpha", (here.a, here.a1, here.a2)),
            ("beta", (here.b, here.b1, here.b2)),
            ("h", (here.d, here.d1, here.d2)),
            ("g", (below.d, below.d1, below.d2)),
        ):
            value, first, second = _with_derivatives(C, w, f, f1, f2)
            columns[name][i] = value
            columns[f"{name}1"][i] = first
            columns[f"{name}2"][i] = second
    return SidebandCoefficients(frequencies=frequencies, **columns)


def full_time_domain(params: MediumParameters, omega0: float) -> TimeDomainCoefficients:
    """
    Second-order expansion of α, β about ω₀, g about ω₁ and h about ω₋₁,
    written in terms of a, b, d at ω₀ and d at ω₋₁ = ω₀ − ω_m.
    """
    C = params.coupling_constant
    w0, wm = omega0, params.omega_m
    v = params.coefficients_at(w0)
    s = params.coefficients_at(w0 - wm)
    return TimeDomainCoefficients(
        A=0.5 * C * w0**3 * v.a2,
        B=0.5 * C * w0**3 * v.b2,
        K=C * (wm * v.d - w0 * wm * v.d1 + 0.5 * w0**2 * (w0 + wm) * v.d2),
        Q=C * (-wm * s.d + w0 * wm * s.d1 + 0.5 * w0**2 * (w0 - wm) * s.d2),
        A1=C * (v.a - w0 * v.a1 - w0**2 * v.a2),
        B1=C * (v.b - w0 * v.b1 - w0**2 * v.b2),
        K1=C * (v.d - (w0 - wm) * v.d1 - w0 * (w0 + wm) * v.d2),
        Q1=C * (s.d - (w0 + wm) * s.d1 - w0 * (w0 - wm) * s.d2),
        A2=C * (2.0 * v.a1 + w0 * v.a2),
        B2=C * (2.0 * v.b1 + w0 * v.b2),
        K2=C * (2.0 * v.d1 + (w0 + wm) * v.d2),
        Q2=C * (2.0 * s.d1 + (w0 - wm) * s.d2),
        reduced=False,
    )


def reduced_time_domain(params: MediumParameters, omega0: float) -> TimeDomainCoefficients:
    """Dominant terms of the expansion for a medium far from resonance."""
    C = params.coupling_constant
    v = params.coefficients_at(omega0)
    return TimeDomainCoefficients(
        A=0.5 * C * omega0**3 * v.a2,
        B=0.5 * C * omega0**3 * v.b2,
        K=C * params.omega_m * v.d,
        Q=-C * params.omega_m * v.d,
        A1=C * v.a,
        B1=C * v.b,
        K1=C * v.d,
        Q1=C * v.d,
        A2=2.0 * C * v.a1,
        B2=2.0 * C * v.b1,
        K2=2.0 * C * v.d1,
        Q2=2.0 * C * v.d1,
        reduced=True,
    )


@dataclass(frozen=True, eq=False)
class CoefficientTables:
    """Coefficients of one medium for every propagation formulation."""
    params: MediumParameters
    omega0: float
    omega: np.ndarray
    alpha_w: np.ndarray
    beta_w: np.ndarray
    g_w: np.ndarray
    h_w: np.ndarray
    full: TimeDomainCoefficients
    reduced: TimeDomainCoefficients
    _cache: Dict[bytes, SidebandCoefficients] = field(default_factory=dict, repr=False)

    def on_axis(self, omega: np.ndarray) -> Dict[str, np.ndarray]:
        """α, β, g, h on ``omega``, reusing the stored tables when the axis matches."""
        omega = np.asarray(omega, dtype=float)
        if omega.shape == self.omega.shape and np.array_equal(omega, self.omega):
            return {"alpha": self.alpha_w, "beta": self.beta_w, "g": self.g_w, "h": self.h_w}
        return frequency_tables(self.params, omega)

    def sidebands(self, frequencies) -> SidebandCoefficients:
        frequencies = np.atleast_1d(np.asarray(frequencies, dtype=float))
        key = frequencies.tobytes()
        if key not in self._cache:
            self._cache[key] = sideband_coefficients(self.params, frequencies)
        return self._cache[key]

    def constants(self, reduced: bool = True) -> TimeDomainCoefficients:
        return self.reduced if reduced else self.full


def frequency_tables(params: MediumParameters, omega: np.ndarray) -> Dict[str, np.ndarray]:
    omega = np.asarray(omega, dtype=float)
    C = params.coupling_constant
    here = params.evaluate(omega)
    below = params.evaluate(omega - params.omega_m)
    return {
        "alpha": C * omega * here["a"],
        "beta": C * omega * here["b"],
        "g": C * omega * below["d"],
        "h": C * omega * here["d"],
    }


def assemble_coefficients(
    params: MediumParameters,
    omega_grid: Optional[np.ndarray] = None,
    omega0: Optional[float] = None,
) -> CoefficientTables:
    """
    Build every coefficient table of a medium.

    :param params: Medium parameters (Taylor form or level table)
    :param omega_grid: Angular frequencies for the frequency-domain tables
    :param omega0: Probe carrier for the time-domain constants (defaults to the reference)
    :raises SingularityError: If a level table is resonant on the requested axis
    """
    omega0 = params.reference if omega0 is None else float(omega0)
    omega = np.asarray([] if omega_grid is None else omega_grid, dtype=float)
    tables = frequency_tables(params, omega)
    result = CoefficientTables(
        params=params,
        omega0=omega0,
        omega=omega,
        alpha_w=tables["alpha"],
        beta_w=tables["beta"],
        g_w=tables["g"],
        h_w=tables["h"],
        full=full_time_domain(params, omega0),
        reduced=reduced_time_domain(params, omega0),
    )
    logger.debug(
        f"Coefficients at ω₀={omega0:.4e} rad/s: K={result.reduced.K:.4e} m⁻¹, "
        f"A1={result.reduced.A1:.4e} s/m"
    )
    return result
