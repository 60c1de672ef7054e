from dataclasses import dataclass, field
from typing import Literal, Optional


@dataclass
class SimulationSettings:
    # Execution
    worker_threads: int = field(
        default=1,
        metadata={"description": "Worker pool size for sweeps (RAMAN_BEAT_THREADS)"},
    )

    # Logging
    log_level: str = field(default="WARNING")
    log_hardware_info: bool = field(
        default=False,
        metadata={"description": "Log CPU and numeric library versions on startup"},
    )

    # Output
    output_dir: str = field(default="out")
    output_format: Literal["csv", "json"] = field(
        default="csv",
        metadata={"description": "Format for 1-D series; metrics and records are always JSON"},
    )

    # Run history
    run_log_dir: Optional[str] = field(
        default=None,
        metadata={"description": "Directory for JSON-lines run logs. None disables run logging."},
    )
    run_log_max_files: int = field(default=20)
    run_log_max_age_days: Optional[int] = field(default=None)

    # Numerics
    ode_rtol: float = field(default=1e-9)  # density-matrix stepping
    ode_atol: float = field(default=1e-12)
    stability_limit: float = field(
        default=0.1,
        metadata={"description": "Upper bound on dz times the largest propagation coefficient"},
    )
