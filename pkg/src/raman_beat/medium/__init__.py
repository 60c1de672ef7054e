"""
Molecular medium: polarizabilities, Rabi frequencies, density-matrix dynamics
and the prepared Raman coherence.
"""
from .drive import DriveConfig, DriveLine, peak_field_from_intensity
from .dynamics import StateTrajectory, evolve_state
from .levels import LevelTable, Polarizability, polarizability, polarizability_matrix
from .parameters import CoefficientValues, MediumParameters, SOLID_HYDROGEN, solid_hydrogen
from .rabi import RabiFrequencies, rabi_and_stark, rabi_quadrature
from .state import (
    PreparedCoherence,
    TwoLevelState,
    adiabatic_state,
    kappa_of,
    mixing_angle,
    prepared_coherence,
)

__all__ = [
    "CoefficientValues",
    "DriveConfig",
    "DriveLine",
    "LevelTable",
    "MediumParameters",
    "Polarizability",
    "PreparedCoherence",
    "RabiFrequencies",
    "SOLID_HYDROGEN",
    "StateTrajectory",
    "TwoLevelState",
    "adiabatic_state",
    "evolve_state",
    "kappa_of",
    "mixing_angle",
    "peak_field_from_intensity",
    "polarizability",
    "polarizability_matrix",
    "prepared_coherence",
    "rabi_and_stark",
    "rabi_quadrature",
    "solid_hydrogen",
]
