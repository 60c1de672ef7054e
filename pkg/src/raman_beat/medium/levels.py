"""
Molecular level tables and the Raman polarizabilities they imply.

Each intermediate level j is described by its detunings ω_j − ω_a and
ω_j − ω_b and by the real dipole moments μ_ja and μ_jb.
"""
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Tuple, Union

import numpy as np
import pandas as pd
from scipy.constants import hbar

from ..core.units import convert_frequency
from ..exceptions import DomainError, SingularityError, ValidationError

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("detuning_a_cm-1", "detuning_b_cm-1", "mu_a_Cm", "mu_b_Cm")
_RESONANCE_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class LevelTable:
    """Intermediate levels j coupling the Raman pair a, b."""
    detuning_a: np.ndarray  # ω_j − ω_a, rad/s
    detuning_b: np.ndarray  # ω_j − ω_b, rad/s
    mu_a: np.ndarray  # μ_ja, C·m
    mu_b: np.ndarray  # μ_jb, C·m

    def __post_init__(self):
        arrays = []
        for name in ("detuning_a", "detuning_b", "mu_a", "mu_b"):
            values = np.asarray(getattr(self, name))
            if np.iscomplexobj(values):
                raise ValidationError(f"LevelTable.{name} must be real")
            values = np.atleast_1d(values.astype(float)).copy()
            if not np.all(np.isfinite(values)):
                raise ValidationError(f"LevelTable.{name} contains non-finite values")
            values.setflags(write=False)
            object.__setattr__(self, name, values)
            arrays.append(values)
        if len({a.shape for a in arrays}) != 1 or arrays[0].ndim != 1 or arrays[0].size == 0:
            raise ValidationError("LevelTable columns must be non-empty 1-D arrays of equal length")

    @classmethod
    def from_entries(cls, entries: Iterable[Tuple[float, float, float, float]]) -> "LevelTable":
        """Build from (ω_j − ω_a, ω_j − ω_b, μ_ja, μ_jb) tuples in SI units."""
        rows = np.array(list(entries), dtype=float)
        if rows.ndim != 2 or rows.shape[1] != 4:
            raise ValidationError("Level entries must be 4-tuples")
        return cls(rows[:, 0], rows[:, 1], rows[:, 2], rows[:, 3])

    @classmethod
    def from_csv(cls, path: Union[str, Path]) -> "LevelTable":
        """
        Load a level table from CSV (detunings in cm⁻¹, dipoles in C·m).

        :raises ValidationError: If columns are missing or values are invalid
        """
        frame = pd.read_csv(path)
        frame.columns = [str(c).strip().replace("⁻¹", "-1") for c in frame.columns]
        missing = [c for c in CSV_COLUMNS if c not in frame.columns]
        if missing:
            raise ValidationError(f"{path}: missing level-table columns {missing}")
        if frame.empty:
            raise ValidationError(f"{path}: level table has no rows")
        try:
            to_rad = np.vectorize(lambda v: convert_frequency(abs(v), "cm-1").value * np.sign(v))
            table = cls(
                detuning_a=to_rad(frame["detuning_a_cm-1"].to_numpy(float)),
                detuning_b=to_rad(frame["detuning_b_cm-1"].to_numpy(float)),
                mu_a=frame["mu_a_Cm"].to_numpy(float),
                mu_b=frame["mu_b_Cm"].to_numpy(float),
            )
        except (DomainError, ValueError) as e:
            raise ValidationError(f"{path}: invalid level table ({e})") from e
        logger.info(f"Loaded {table.size} levels from {path}")
        return table

    def to_frame(self) -> pd.DataFrame:
        per_cm = convert_frequency(1.0, "cm-1").value
        return pd.DataFrame(
            {
                "detuning_a_cm-1": self.detuning_a / per_cm,
                "detuning_b_cm-1": self.detuning_b / per_cm,
                "mu_a_Cm": self.mu_a,
                "mu_b_Cm": self.mu_b,
            }
        )

    @property
    def size(self) -> int:
        return int(self.detuning_a.size)

    def check_frequency(self, omega: float) -> None:
        """
        :raises SingularityError: If ω (or −ω) hits a one-photon resonance
        """
        for label, detunings in (("a", self.detuning_a), ("b", self.detuning_b)):
            for sign in (1.0, -1.0):
                gap = np.abs(detunings - sign * omega)
                hit = np.nonzero(gap <= _RESONANCE_TOLERANCE * np.abs(detunings))[0]
                if hit.size:
                    j = int(hit[0])
                    raise SingularityError(
                        f"Frequency {omega:.6e} rad/s is resonant with level {j} "
                        f"(ω_j − ω_{label} = {detunings[j]:.6e} rad/s)"
                    )


@dataclass(frozen=True)
class Polarizability:
    """
    Raman polarizability matrix and the dispersion/coupling coefficients at one ω.

    ``a1``/``a2`` etc. are the first and second derivatives with respect to ω.
    """
    omega: float
    alpha_aa: float
    alpha_bb: float
    alpha_ab: float
    alpha_ba: float
    a: float
    b: float
    d: float
    a1: float
    b1: float
    d1: float
    a2: float
    b2: float
    d2: float


def _pole_sums(weights: np.ndarray, detunings: np.ndarray, omega: float, sign: float):
    """Σ w/(Δ − sω) and its first two ω-derivatives."""
    gap = detunings - sign * omega
    return (
        float(np.sum(weights / gap)),
        float(np.sum(sign * weights / gap**2)),
        float(np.sum(2.0 * weights / gap**3)),
    )


def polarizability(levels: LevelTable, omega: float) -> Polarizability:
    """
    Evaluate the Raman polarizability matrix and the a, b, d coefficients at ω.

    a and b are even in ω by construction. Derivatives are exact derivatives of
    the rational level sums.

    :param levels: Level table
    :param omega: Angular frequency, rad/s
    :raises SingularityError: If ω or −ω is resonant with a level
    """
    omega = float(omega)
    levels.check_frequency(omega)
    mu_aa = levels.mu_a**2
    mu_bb = levels.mu_b**2
    mu_ab = levels.mu_a * levels.mu_b

    alpha_aa = 2.0 / hbar * float(np.sum(mu_aa / (levels.detuning_a - omega)))
    alpha_bb = 2.0 / hbar * float(np.sum(mu_bb / (levels.detuning_b - omega)))
    alpha_ab = 2.0 / hbar * float(np.sum(mu_ab / (levels.detuning_b - omega)))
    alpha_ba = 2.0 / hbar * float(np.sum(mu_ab / (levels.detuning_a - omega)))

    prefactor = 1.0 / (2.0 * hbar**2)
    a_minus = _pole_sums(mu_aa, levels.detuning_a, omega, 1.0)
    a_plus = _pole_sums(mu_aa, levels.detuning_a, omega, -1.0)
    b_minus = _pole_sums(mu_bb, levels.detuning_b, omega, 1.0)
    b_plus = _pole_sums(mu_bb, levels.detuning_b, omega, -1.0)
    d_minus = _pole_sums(mu_ab, levels.detuning_b, omega, 1.0)
    d_plus = _pole_sums(mu_ab, levels.detuning_a, omega, -1.0)

    a = [prefactor * (m + p) for m, p in zip(a_minus, a_plus)]
    b = [prefactor * (m + p) for m, p in zip(b_minus, b_plus)]
    d = [prefactor * (m + p) for m, p in zip(d_minus, d_plus)]

    return Polarizability(
        omega=omega,
        alpha_aa=alpha_aa,
        alpha_bb=alpha_bb,
        alpha_ab=alpha_ab,
        alpha_ba=alpha_ba,
        a=a[0],
        b=b[0],
        d=d[0],
        a1=a[1],
        b1=b[1],
        d1=d[1],
        a2=a[2],
        b2=b[2],
        d2=d[2],
    )


def polarizability_matrix(levels: LevelTable, omega: float) -> Tuple[float, float, float, float]:
    """α_aa, α_bb, α_ab, α_ba at ω."""
    values = polarizability(levels, omega)
    return values.alpha_aa, values.alpha_bb, values.alpha_ab, values.alpha_ba
