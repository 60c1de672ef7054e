"""
Frequency units and conversions.

All internal quantities are SI; angular frequency in rad/s is the canonical form.
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

from scipy.constants import c as SPEED_OF_LIGHT

from ..exceptions import DomainError


class FrequencyUnit(str, Enum):
    """Supported input units for frequencies."""
    NM = "nm"
    WAVENUMBER = "cm-1"
    RAD_PER_S = "rad/s"
    HZ = "Hz"

    @classmethod
    def parse(cls, unit: Union["FrequencyUnit", str]) -> "FrequencyUnit":
        if isinstance(unit, FrequencyUnit):
            return unit
        normalized = unit.strip().replace("⁻¹", "-1").replace("^-1", "-1")
        for member in cls:
            if member.value.lower() == normalized.lower():
                return member
        raise DomainError(f"Unknown frequency unit: {unit!r}")


@dataclass(frozen=True)
class Frequency:
    """Angular frequency in rad/s."""
    value: float

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise DomainError(f"Frequency must be finite, got {self.value}")

    @classmethod
    def from_wavelength_nm(cls, wavelength_nm: float) -> "Frequency":
        return convert_frequency(wavelength_nm, FrequencyUnit.NM)

    @classmethod
    def from_wavenumber(cls, wavenumber_cm: float) -> "Frequency":
        return convert_frequency(wavenumber_cm, FrequencyUnit.WAVENUMBER)

    @property
    def wavelength_nm(self) -> float:
        return 2.0 * math.pi * SPEED_OF_LIGHT / self.value * 1e9

    @property
    def wavenumber(self) -> float:
        """Wavenumber in cm⁻¹."""
        return self.value / (2.0 * math.pi * SPEED_OF_LIGHT * 100.0)

    @property
    def hz(self) -> float:
        return self.value / (2.0 * math.pi)

    @property
    def period(self) -> float:
        """Oscillation period 2π/ω in seconds."""
        if self.value == 0:
            raise DomainError("Zero frequency has no finite period")
        return 2.0 * math.pi / abs(self.value)

    def __float__(self) -> float:
        return float(self.value)


def convert_frequency(value: float, unit: Union[FrequencyUnit, str]) -> Frequency:
    """
    Convert a frequency given in any supported unit to angular frequency.

    :param value: Numeric value in ``unit``
    :param unit: One of nm, cm-1, rad/s, Hz
    :return: Frequency in rad/s
    :raises DomainError: If a wavelength or wavenumber is not positive
    """
    unit = FrequencyUnit.parse(unit)
    value = float(value)

    if unit is FrequencyUnit.NM:
        if value <= 0:
            raise DomainError(f"Wavelength must be positive, got {value} nm")
        return Frequency(2.0 * math.pi * SPEED_OF_LIGHT / (value * 1e-9))
    if unit is FrequencyUnit.WAVENUMBER:
        if value <= 0:
            raise DomainError(f"Wavenumber must be positive, got {value} cm-1")
        return Frequency(2.0 * math.pi * SPEED_OF_LIGHT * 100.0 * value)
    if unit is FrequencyUnit.HZ:
        return Frequency(2.0 * math.pi * value)
    return Frequency(value)
