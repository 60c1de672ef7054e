"""
Utility functions for the simulation runner.
"""
from .hardware import HardwareDetector, HardwareInfo
from .run_cleanup import cleanup_run_logs

__all__ = ["HardwareDetector", "HardwareInfo", "cleanup_run_logs"]
