from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Optional, Tuple, Union

from ..core.grids import TimeGrid
from ..exceptions import ValidationError


class Scheme(str, Enum):
    """Propagation formulations selectable from the CLI ``--scheme`` flag."""
    FREQ_DOMAIN = "freq-domain"
    SIDEBAND_SVEA = "sideband-svea"
    SIDEBAND_FULL = "sideband-full"
    TIME_DOMAIN_FULL = "time-domain-full"
    TIME_DOMAIN_OFFRES = "time-domain-offres"
    DISPERSIONLESS = "dispersionless"

    @classmethod
    def parse(cls, value: Union[str, "Scheme"]) -> "Scheme":
        try:
            return cls(value)
        except ValueError:
            allowed = ", ".join(s.value for s in cls)
            raise ValidationError(f"Unknown scheme '{value}'. Expected one of: {allowed}")


@dataclass(frozen=True)
class PropagationConfig:
    """
    Settings for one propagation run.

    All propagators work in the frame co-moving with the coherence,
    ξ = τ − z/v, where a frozen ρ_ab is stationary.
    """
    z_end: float  # m
    scheme: Scheme = Scheme.TIME_DOMAIN_OFFRES
    dz: Optional[float] = field(
        default=None,
        metadata={"description": "Fixed z step; None picks the largest step the guard allows"},
    )
    grid: Optional[TimeGrid] = None
    adaptive: bool = False
    rtol: float = 1e-8
    atol: float = 1e-12
    stability_limit: float = field(
        default=0.1,
        metadata={"description": "Upper bound on dz times the largest non-diagonal rate"},
    )

    # Ablation of the off-resonant time-domain terms
    include_group_velocity: bool = True  # F1
    include_gvd: bool = True  # A2, B2
    include_coupling_gvd: bool = True  # K2, Q2

    # Self-consistent drive cascade
    cascade_orders: Tuple[int, int] = (-5, 30)
    medium_step: float = 1e-6  # m between density-matrix updates
    overflow_threshold: float = 1e-3
    ode_rtol: float = 1e-9
    ode_atol: float = 1e-12

    def __post_init__(self):
        object.__setattr__(self, "scheme", Scheme.parse(self.scheme))
        if not self.z_end >= 0:
            raise ValidationError(f"z_end must be non-negative, got {self.z_end}")
        if self.dz is not None and not self.dz > 0:
            raise ValidationError(f"dz must be positive, got {self.dz}")
        if not 0 < self.stability_limit <= 1:
            raise ValidationError(
                f"stability_limit must lie in (0, 1], got {self.stability_limit}"
            )
        if self.cascade_orders[0] > 0 or self.cascade_orders[1] < 1:
            raise ValidationError("cascade_orders must contain the drive orders 0 and 1")
        if not self.medium_step > 0:
            raise ValidationError(f"medium_step must be positive, got {self.medium_step}")

    def with_z(self, z_end: float) -> "PropagationConfig":
        return replace(self, z_end=z_end)

    def with_scheme(self, scheme: Union[str, Scheme]) -> "PropagationConfig":
        return replace(self, scheme=Scheme.parse(scheme))
