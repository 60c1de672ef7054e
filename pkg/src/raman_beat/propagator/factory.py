"""
Scheme registry: one propagator per formulation, all taking and returning a
real probe field in the co-moving frame ξ = τ − z/v.
"""
import logging
from abc import ABC, abstractmethod
from typing import Dict, Type, Union

from ..analytic.beat import BeatParameters
from ..analytic.solution import propagate_dispersionless
from ..core.fields import SampledField
from ..core.grids import TimeGrid
from ..core.transforms import analytic_signal, inverse_to_field, spectrum_of
from ..medium.state import TwoLevelState
from .coefficients import CoefficientTables
from .frequency_domain import propagate_frequency_domain
from .settings import PropagationConfig, Scheme
from .sidebands import decompose_sidebands, grid_orders, propagate_sidebands, synthesize_field
from .time_domain import propagate_time_domain

logger = logging.getLogger(__name__)


class Propagator(ABC):
    scheme: Scheme

    @abstractmethod
    def propagate(
        self,
        field: SampledField,
        state: TwoLevelState,
        tables: CoefficientTables,
        cfg: PropagationConfig,
    ) -> SampledField:
        """Propagate a real probe field to cfg.z_end through the frozen medium."""


class FrequencyDomainPropagator(Propagator):
    scheme = Scheme.FREQ_DOMAIN

    def propagate(self, field, state, tables, cfg):
        spectrum = propagate_frequency_domain(spectrum_of(field), state, tables, cfg)
        return inverse_to_field(spectrum, field.grid)


class SidebandPropagator(Propagator):
    scheme = Scheme.SIDEBAND_SVEA
    full = False

    def propagate(self, field, state, tables, cfg):
        omega_m = tables.params.omega_m
        orders = grid_orders(field.grid, tables.omega0, omega_m)
        sidebands = decompose_sidebands(field, tables.omega0, omega_m, orders)
        output = propagate_sidebands(sidebands, state, tables, cfg, full=self.full)
        return synthesize_field(output).real_field()


class FullSidebandPropagator(SidebandPropagator):
    scheme = Scheme.SIDEBAND_FULL
    full = True


class TimeDomainPropagator(Propagator):
    scheme = Scheme.TIME_DOMAIN_OFFRES

    def propagate(self, field, state, tables, cfg):
        cfg = cfg.with_scheme(self.scheme)
        return propagate_time_domain(analytic_signal(field), state, tables, cfg).real_field()


class FullTimeDomainPropagator(TimeDomainPropagator):
    scheme = Scheme.TIME_DOMAIN_FULL


class DispersionlessPropagator(Propagator):
    """Exact dispersionless solution, shifted from reduced time η = ξ + φ/ω_m."""
    scheme = Scheme.DISPERSIONLESS

    def propagate(self, field, state, tables, cfg):
        p = BeatParameters.from_state(tables.params, state, cfg.z_end)
        offset = p.phi / p.omega_m
        grid = field.grid
        shifted = TimeGrid(grid.origin + offset, grid.dt, grid.n)
        output = propagate_dispersionless(SampledField(shifted, field.e_real), p)
        return SampledField(grid, output.e_real)


PROPAGATORS: Dict[Scheme, Type[Propagator]] = {
    Scheme.FREQ_DOMAIN: FrequencyDomainPropagator,
    Scheme.SIDEBAND_SVEA: SidebandPropagator,
    Scheme.SIDEBAND_FULL: FullSidebandPropagator,
    Scheme.TIME_DOMAIN_OFFRES: TimeDomainPropagator,
    Scheme.TIME_DOMAIN_FULL: FullTimeDomainPropagator,
    Scheme.DISPERSIONLESS: DispersionlessPropagator,
}


def create_propagator(scheme: Union[str, Scheme]) -> Propagator:
    """
    :raises ValidationError: For an unknown scheme name
    """
    scheme = Scheme.parse(scheme)
    logger.debug(f"Creating propagator for scheme {scheme.value}")
    return PROPAGATORS[scheme]()
