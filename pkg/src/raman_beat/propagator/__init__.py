"""
Dispersive propagation of the probe in the frequency, sideband and time
domains, the self-consistent drive cascade and GVD compression estimates.
"""
from ..core.sidebands import SidebandSet
from .cascade import CascadeResult, cascade_selfconsistent, check_comb_edges, evolve_medium
from .coefficients import (
    CoefficientTables,
    SidebandCoefficients,
    TimeDomainCoefficients,
    assemble_coefficients,
    frequency_tables,
    full_time_domain,
    reduced_time_domain,
    sideband_coefficients,
)
from .factory import PROPAGATORS, Propagator, create_propagator
from .frame import FrozenMedium
from .frequency_domain import modulation_bins, propagate_frequency_domain
from .gvd import GvdReport, gvd_analysis
from .settings import PropagationConfig, Scheme
from .sidebands import decompose_sidebands, grid_orders, propagate_sidebands, synthesize_field
from .stepping import StepPlan, lawson_rk4, plan_steps
from .time_domain import check_resolution, propagate_time_domain

__all__ = [
    "CascadeResult",
    "CoefficientTables",
    "FrozenMedium",
    "GvdReport",
    "PROPAGATORS",
    "PropagationConfig",
    "Propagator",
    "Scheme",
    "SidebandCoefficients",
    "SidebandSet",
    "StepPlan",
    "TimeDomainCoefficients",
    "assemble_coefficients",
    "cascade_selfconsistent",
    "check_comb_edges",
    "check_resolution",
    "create_propagator",
    "decompose_sidebands",
    "evolve_medium",
    "frequency_tables",
    "full_time_domain",
    "grid_orders",
    "gvd_analysis",
    "lawson_rk4",
    "modulation_bins",
    "plan_steps",
    "propagate_frequency_domain",
    "propagate_sidebands",
    "propagate_time_domain",
    "reduced_time_domain",
    "sideband_coefficients",
    "synthesize_field",
]
