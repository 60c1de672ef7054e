"""
Scenario files: JSON documents validated into pydantic models.

Every physical quantity carries its unit in the field name (``carrier_nm``,
``width_fs``, ``z_um``). Values given relative to the modulation period or
frequency use the ``_over_Tm`` and ``_over_omega_m`` suffixes.
"""
import hashlib
import json
import logging
import math
from importlib import resources
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple, Union

import pydantic
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..analytic.spectra import BesselMode
from ..core.pulses import WidthConvention
from ..exceptions import ValidationError
from ..propagator.settings import Scheme

logger = logging.getLogger(__name__)

PRESET_PACKAGE = "raman_beat.cli.presets"

Output = Literal["field", "spectrum", "sidebands", "metrics", "coherence"]
ALL_OUTPUTS: Tuple[str, ...] = ("field", "spectrum", "sidebands", "metrics", "coherence")


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


def _exactly_one(model: BaseModel, names: Sequence[str], required: bool = True) -> None:
    given = [name for name in names if getattr(model, name) is not None]
    if len(given) > 1 or (required and not given):
        raise ValueError(f"exactly one of {', '.join(names)} must be given, got {given or 'none'}")


class CoefficientSpec(_Strict):
    """a, b, d at the reference frequency with first and second ω-derivatives (SI)."""
    a0: float
    b0: float
    d0: float
    a1: float = 0.0
    b1: float = 0.0
    d1: float = 0.0
    a2: float = 0.0
    b2: float = 0.0
    d2: float = 0.0


class MediumSpec(_Strict):
    preset: Literal["solid-hydrogen", "custom"] = "solid-hydrogen"
    reference_nm: Optional[float] = Field(
        default=None, gt=0, description="Re-expand the coefficients about this wavelength"
    )
    density_cm3: Optional[float] = Field(default=None, gt=0)
    omega_m_cm: Optional[float] = Field(default=None, gt=0, description="Modulation frequency")
    coefficients: Optional[CoefficientSpec] = None
    level_table: Optional[str] = Field(
        default=None, description="CSV level table; coefficients follow from the level sums"
    )
    dispersionless: bool = Field(
        default=False, description="Drop every frequency derivative of a, b and d"
    )

    @model_validator(mode="after")
    def _check_custom(self) -> "MediumSpec":
        if self.preset == "custom":
            missing = [
                name
                for name in ("density_cm3", "omega_m_cm", "reference_nm")
                if getattr(self, name) is None
            ]
            if missing:
                raise ValueError(f"custom medium needs {', '.join(missing)}")
            _exactly_one(self, ("coefficients", "level_table"))
        if self.level_table is not None and not Path(self.level_table).is_file():
            raise ValueError(f"level table not found: {self.level_table}")
        return self


class DirectPreparation(_Strict):
    theta: float = Field(ge=-math.pi / 2, le=math.pi / 2, description="Mixing angle θ, rad")
    phi0: float = Field(default=0.0, description="Coherence phase φ₀, rad")


class DriveLineSpec(_Strict):
    wavelength_nm: float = Field(gt=0)
    intensity_w_cm2: float = Field(ge=0)
    width_ns: float = Field(gt=0, description="Intensity FWHM")
    peak_time_ns: float = 0.0
    phase: float = 0.0


class GridSpec(_Strict):
    """
    Uniform grid of ``n`` samples centred on τ = 0, sized by exactly one of
    a number of modulation periods, a sample spacing or a total window.
    """
    n: int = Field(gt=1)
    periods: Optional[int] = Field(default=None, gt=0)
    dt_fs: Optional[float] = Field(default=None, gt=0)
    window_ns: Optional[float] = Field(default=None, gt=0)

    @field_validator("n")
    @classmethod
    def _power_of_two(cls, n: int) -> int:
        if n & (n - 1):
            raise ValueError(f"n must be a power of two, got {n}")
        return n

    @model_validator(mode="after")
    def _one_size(self) -> "GridSpec":
        _exactly_one(self, ("periods", "dt_fs", "window_ns"))
        return self


class AdiabaticPreparation(_Strict):
    lines: List[DriveLineSpec] = Field(min_length=2, max_length=2)
    detuning_mhz: float = Field(default=0.0, description="Two-photon detuning δ/2π")
    gamma1_per_s: float = Field(default=0.0, ge=0, description="Population decay γ₁")
    gamma2_per_s: float = Field(default=0.0, ge=0, description="Coherence decay γ₂")
    drive_grid: Optional[GridSpec] = Field(
        default=None,
        description="τ grid for density-matrix evolution; the closed-form dressed state "
        "at the drive peak is used when omitted",
    )


class PreparationSpec(_Strict):
    direct: Optional[DirectPreparation] = None
    adiabatic: Optional[AdiabaticPreparation] = None

    @model_validator(mode="after")
    def _one_mode(self) -> "PreparationSpec":
        _exactly_one(self, ("direct", "adiabatic"))
        return self


class ProbeSpec(_Strict):
    carrier_nm: Optional[float] = Field(default=None, gt=0)
    carrier_over_omega_m: Optional[float] = Field(default=None, gt=0)
    width_fs: Optional[float] = Field(default=None, gt=0)
    width_over_Tm: Optional[float] = Field(default=None, gt=0)
    width_kind: WidthConvention = WidthConvention.INTENSITY_FWHM
    eta_p_over_Tm: Optional[float] = Field(
        default=None, description="Peak time in the reduced frame of the gain profile"
    )
    peak_time_fs: Optional[float] = Field(default=None, description="Peak local time τ_p")
    amplitude_v_per_m: float = Field(default=1.0, ge=0)
    phase: float = 0.0
    csv_path: Optional[str] = Field(
        default=None, description="Sampled input waveform replacing the Gaussian"
    )

    @model_validator(mode="after")
    def _check(self) -> "ProbeSpec":
        _exactly_one(self, ("carrier_nm", "carrier_over_omega_m"))
        if self.csv_path is None:
            _exactly_one(self, ("width_fs", "width_over_Tm"))
        elif not Path(self.csv_path).is_file():
            raise ValueError(f"probe waveform not found: {self.csv_path}")
        _exactly_one(self, ("eta_p_over_Tm", "peak_time_fs"), required=False)
        return self


class RunSpec(_Strict):
    z_um: float = Field(default=0.0, ge=0, description="Medium length")
    alpha_z: Optional[float] = Field(
        default=None, ge=0, description="Sets the length so that αz takes this value"
    )
    scheme: Scheme = Scheme.TIME_DOMAIN_OFFRES
    dz_um: Optional[float] = Field(default=None, gt=0)
    adaptive: bool = False
    rtol: float = Field(default=1e-8, gt=0)
    atol: float = Field(default=1e-12, gt=0)
    include_group_velocity: bool = True
    include_gvd: bool = True
    include_coupling_gvd: bool = True
    cascade_orders: Tuple[int, int] = (-5, 30)
    medium_step_um: float = Field(default=1.0, gt=0)
    overflow_threshold: float = Field(default=1e-3, gt=0)
    bessel_mode: BesselMode = BesselMode.FULL_PRODUCT
    sideband_threshold: float = Field(default=1e-4, gt=0, lt=1)

    @field_validator("scheme", mode="before")
    @classmethod
    def _scheme(cls, value: Any) -> Scheme:
        try:
            return Scheme.parse(value)
        except ValidationError as exc:
            raise ValueError(str(exc))

    @field_validator("cascade_orders")
    @classmethod
    def _orders(cls, value: Tuple[int, int]) -> Tuple[int, int]:
        if value[0] > 0 or value[1] < 1:
            raise ValueError("cascade_orders must contain the drive orders 0 and 1")
        return value


class Scenario(_Strict):
    name: str = "scenario"
    description: str = ""
    medium: MediumSpec = Field(default_factory=MediumSpec)
    preparation: PreparationSpec
    probe: Optional[ProbeSpec] = Field(default=None, description="Omitted for drive-only runs")
    grid: GridSpec
    run: RunSpec = Field(default_factory=RunSpec)
    outputs: List[Output] = Field(default_factory=lambda: list(ALL_OUTPUTS))

    def digest(self) -> str:
        """SHA-256 of the canonical JSON form; identical scenarios share a digest."""
        canonical = json.dumps(self.model_dump(mode="json"), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    def wants(self, output: str) -> bool:
        return output in self.outputs


def _parse_value(raw: str) -> Any:
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw


def apply_overrides(data: Dict[str, Any], overrides: Sequence[str]) -> Dict[str, Any]:
    """
    Apply ``dotted.key=value`` assignments; values are parsed as JSON when possible.

    :raises ValidationError: For an assignment without ``=``
    """
    for assignment in overrides:
        key, sep, raw = assignment.partition("=")
        if not sep or not key:
            raise ValidationError(f"Override {assignment!r} must have the form key.path=value")
        target = data
        parts = key.strip().split(".")
        for part in parts[:-1]:
            child = target.get(part)
            if child is None:
                child = target[part] = {}
            elif not isinstance(child, dict):
                raise ValidationError(f"Override {key}: '{part}' is not a section")
            target = child
        target[parts[-1]] = _parse_value(raw.strip())
        logger.debug(f"Override {key} = {raw.strip()}")
    return data


def validate_scenario(data: Dict[str, Any]) -> Scenario:
    """
    :raises ValidationError: With one path-qualified line per violated field
    """
    try:
        return Scenario.model_validate(data)
    except pydantic.ValidationError as exc:
        lines = []
        for error in exc.errors():
            location = ".".join(str(part) for part in error["loc"]) or "<root>"
            lines.append(f"  {location}: {error['msg']}")
        raise ValidationError("Invalid scenario:\n" + "\n".join(lines)) from exc


def list_presets() -> List[str]:
    files = resources.files(PRESET_PACKAGE).iterdir()
    return sorted(p.name[: -len(".json")] for p in files if p.name.endswith(".json"))


def read_preset(name: str) -> Dict[str, Any]:
    """
    :raises ValidationError: For an unknown preset name
    """
    resource = resources.files(PRESET_PACKAGE).joinpath(f"{name}.json")
    if not resource.is_file():
        raise ValidationError(
            f"Unknown preset '{name}'. Available presets: {', '.join(list_presets())}"
        )
    return json.loads(resource.read_text(encoding="utf-8"))


def load_scenario(
    path: Optional[Union[str, Path]] = None,
    preset: Optional[str] = None,
    overrides: Sequence[str] = (),
) -> Scenario:
    """
    Load a scenario from a preset, a JSON file, or a preset overlaid by a file.

    The file's top-level sections replace the preset's; ``overrides`` apply last.

    :raises ValidationError: If neither source is given or the result is invalid
    """
    if path is None and preset is None:
        raise ValidationError("Provide a scenario with --config or --preset")
    data: Dict[str, Any] = read_preset(preset) if preset else {}
    if path is not None:
        try:
            document = json.loads(Path(path).read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise ValidationError(f"Scenario file not found: {path}")
        except json.JSONDecodeError as exc:
            raise ValidationError(f"Scenario file {path} is not valid JSON: {exc}")
        if not isinstance(document, dict):
            raise ValidationError(f"Scenario file {path} must hold a JSON object")
        data.update(document)
    scenario = validate_scenario(apply_overrides(data, overrides))
    logger.info(f"Loaded scenario '{scenario.name}' ({scenario.digest()[:12]})")
    return scenario
