"""
Medium parameters: density, modulation frequency and the dispersion and
coupling coefficients a, b, d with their frequency derivatives.
"""
import logging
from dataclasses import dataclass, field, replace
from typing import List, Optional

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT
from scipy.constants import epsilon_0, hbar

from ..core.units import Frequency, convert_frequency
from ..exceptions import ValidationError
from .levels import LevelTable, polarizability

logger = logging.getLogger(__name__)

ORDERING_MARGIN = 10.0


@dataclass(frozen=True)
class CoefficientValues:
    """a, b, d and their first and second ω-derivatives at one frequency."""
    omega: float
    a: float
    b: float
    d: float
    a1: float
    b1: float
    d1: float
    a2: float
    b2: float
    d2: float


@dataclass(frozen=True)
class MediumParameters:
    """
    Raman medium description in SI units.

    Coefficients are given at the reference frequency and extended to other
    frequencies by second-order Taylor expansion, unless a level table is
    attached, in which case every evaluation uses the exact level sums.
    """
    density: float  # m⁻³
    omega_m: float  # rad/s
    reference: float  # rad/s
    a0: float
    b0: float
    d0: float
    a1: float = 0.0
    b1: float = 0.0
    d1: float = 0.0
    a2: float = 0.0
    b2: float = 0.0
    d2: float = 0.0
    levels: Optional[LevelTable] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not self.density > 0:
            raise ValidationError(f"Density must be positive, got {self.density}")
        if not self.omega_m > 0:
            raise ValidationError(f"Modulation frequency must be positive, got {self.omega_m}")
        if not self.reference > 0:
            raise ValidationError(f"Reference frequency must be positive, got {self.reference}")
        values = (self.a0, self.b0, self.d0, self.a1, self.b1, self.d1, self.a2, self.b2, self.d2)
        if not all(np.isfinite(values)):
            raise ValidationError("Medium coefficients must be finite")

    @classmethod
    def from_levels(
        cls, levels: LevelTable, density: float, omega_m: float, reference: float
    ) -> "MediumParameters":
        """Evaluate the coefficients from a level table at the reference frequency."""
        values = polarizability(levels, reference)
        return cls(
            density=density,
            omega_m=omega_m,
            reference=reference,
            a0=values.a,
            b0=values.b,
            d0=values.d,
            a1=values.a1,
            b1=values.b1,
            d1=values.d1,
            a2=values.a2,
            b2=values.b2,
            d2=values.d2,
            levels=levels,
        )

    @property
    def coupling_constant(self) -> float:
        """Nħ/ε₀c, the common prefactor of every propagation coefficient."""
        return self.density * hbar / (epsilon_0 * SPEED_OF_LIGHT)

    @property
    def modulation_period(self) -> float:
        return 2.0 * np.pi / self.omega_m

    @property
    def is_dispersionless(self) -> bool:
        return self.levels is None and not any(
            (self.a1, self.b1, self.d1, self.a2, self.b2, self.d2)
        )

    def coefficients_at(self, omega: float) -> CoefficientValues:
        """
        Coefficients and derivatives at ω.

        :raises SingularityError: If a level table is attached and ω is resonant
        """
        omega = float(omega)
        if self.levels is not None:
            p = polarizability(self.levels, omega)
            return CoefficientValues(omega, p.a, p.b, p.d, p.a1, p.b1, p.d1, p.a2, p.b2, p.d2)
        x = omega - self.reference
        return CoefficientValues(
            omega=omega,
            a=self.a0 + self.a1 * x + 0.5 * self.a2 * x * x,
            b=self.b0 + self.b1 * x + 0.5 * self.b2 * x * x,
            d=self.d0 + self.d1 * x + 0.5 * self.d2 * x * x,
            a1=self.a1 + self.a2 * x,
            b1=self.b1 + self.b2 * x,
            d1=self.d1 + self.d2 * x,
            a2=self.a2,
            b2=self.b2,
            d2=self.d2,
        )

    def evaluate(self, omega: np.ndarray) -> dict:
        """Vectorised a, b, d over an array of frequencies."""
        omega = np.asarray(omega, dtype=float)
        if self.levels is not None:
            values = [self.coefficients_at(w) for w in omega.ravel()]
            return {
                name: np.array([getattr(v, name) for v in values]).reshape(omega.shape)
                for name in ("a", "b", "d")
            }
        x = omega - self.reference
        return {
            "a": self.a0 + self.a1 * x + 0.5 * self.a2 * x * x,
            "b": self.b0 + self.b1 * x + 0.5 * self.b2 * x * x,
            "d": self.d0 + self.d1 * x + 0.5 * self.d2 * x * x,
        }

    def shifted_to(self, reference: float) -> "MediumParameters":
        """Re-reference the coefficient set to another expansion frequency."""
        values = self.coefficients_at(reference)
        return replace(
            self,
            reference=float(reference),
            a0=values.a,
            b0=values.b,
            d0=values.d,
            a1=values.a1,
            b1=values.b1,
            d1=values.d1,
            a2=values.a2,
            b2=values.b2,
            d2=values.d2,
        )

    def dispersionless(self) -> "MediumParameters":
        """Same medium with every frequency derivative set to zero."""
        return replace(
            self, a1=0.0, b1=0.0, d1=0.0, a2=0.0, b2=0.0, d2=0.0, levels=None
        )

    def with_density(self, density: float) -> "MediumParameters":
        return replace(self, density=density)

    def check_ordering(self, margin: float = ORDERING_MARGIN) -> List[str]:
        """
        Far-off-resonance ordering f₀ ≫ ω₀f′ ≫ ω₀²f″ for f = a, b, d.

        :return: Descriptions of the violated ratios (empty when all hold)
        """
        w = self.reference
        violations = []
        for name in ("a", "b", "d"):
            f0 = abs(getattr(self, f"{name}0"))
            f1 = abs(w * getattr(self, f"{name}1"))
            f2 = abs(w * w * getattr(self, f"{name}2"))
            if f1 and f0 < margin * f1:
                violations.append(f"{name}0/(ω₀{name}′) = {f0 / f1:.3g} < {margin:g}")
            if f2 and f1 < margin * f2:
                violations.append(f"ω₀{name}′/(ω₀²{name}″) = {f1 / f2:.3g} < {margin:g}")
        for message in violations:
            logger.warning(f"Far-off-resonance ordering not satisfied: {message}")
        return violations


SOLID_HYDROGEN = {
    "density_cm3": 2.6e22,
    "omega_m_cm": 4149.7,
    "a0": 2.42e-7,
    "b0": 2.63e-7,
    "d0": 5.50e-8,
    "a1": 3.13e-24,
    "b1": 3.81e-24,
    "d1": 1.25e-24,
    "a2": 1.41e-39,
    "b2": 1.73e-39,
    "d2": 5.07e-40,
}


def solid_hydrogen(reference: Optional[Frequency] = None) -> MediumParameters:
    """
    Solid parahydrogen Q₁(0) medium with coefficients referenced to 800 nm.

    :param reference: Optional probe frequency to re-expand the coefficients about
    """
    base = MediumParameters(
        density=SOLID_HYDROGEN["density_cm3"] * 1e6,
        omega_m=convert_frequency(SOLID_HYDROGEN["omega_m_cm"], "cm-1").value,
        reference=convert_frequency(800.0, "nm").value,
        **{k: SOLID_HYDROGEN[k] for k in ("a0", "b0", "d0", "a1", "b1", "d1", "a2", "b2", "d2")},
    )
    if reference is None:
        return base
    return base.shifted_to(reference.value)
