"""
Command-line surface: scenario files, presets, run logging and the ``raman-beat`` entry point.
"""
from .run_logger import RunLogger, run_log_path
from .scenario import (
    Scenario,
    apply_overrides,
    list_presets,
    load_scenario,
    read_preset,
    validate_scenario,
)

__all__ = [
    "RunLogger",
    "Scenario",
    "apply_overrides",
    "list_presets",
    "load_scenario",
    "read_preset",
    "run_log_path",
    "validate_scenario",
]
