"""
Settings loader for environment-driven runs.
"""
from dotenv import load_dotenv

from .config import SimulationSettings
from .config_validator import get_optional_env, parse_bool, parse_number
from .exceptions import ConfigurationError

_LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def load_settings_from_env() -> SimulationSettings:
    """
    Load simulation settings from environment variables.

    A ``.env`` file in the working directory is read first when present.

    Usage:
        settings = load_settings_from_env()
        app = RamanBeatApp(settings)
        app.initialize()

    :return: Validated SimulationSettings instance
    :raises ConfigurationError: If a value cannot be parsed
    """
    load_dotenv()

    log_level = get_optional_env("RAMAN_BEAT_LOG_LEVEL", "WARNING").upper()
    if log_level not in _LOG_LEVELS:
        raise ConfigurationError(
            f"RAMAN_BEAT_LOG_LEVEL must be one of {', '.join(_LOG_LEVELS)}, got {log_level!r}."
        )

    output_format = get_optional_env("RAMAN_BEAT_FORMAT", "csv").lower()
    if output_format not in ("csv", "json"):
        raise ConfigurationError(
            f"RAMAN_BEAT_FORMAT must be 'csv' or 'json', got {output_format!r}."
        )

    return SimulationSettings(
        worker_threads=parse_number(
            get_optional_env("RAMAN_BEAT_THREADS", "1"), "RAMAN_BEAT_THREADS", int, minimum=1
        ),
        log_level=log_level,
        log_hardware_info=parse_bool(
            get_optional_env("RAMAN_BEAT_LOG_HARDWARE", "false"), "RAMAN_BEAT_LOG_HARDWARE"
        ),
        output_dir=get_optional_env("RAMAN_BEAT_OUT_DIR", "out"),
        output_format=output_format,
        run_log_dir=get_optional_env("RAMAN_BEAT_RUN_LOG_DIR"),
        run_log_max_files=parse_number(
            get_optional_env("RAMAN_BEAT_RUN_LOG_MAX_FILES", "20"),
            "RAMAN_BEAT_RUN_LOG_MAX_FILES",
            int,
            minimum=1,
        ),
        run_log_max_age_days=parse_number(
            get_optional_env("RAMAN_BEAT_RUN_LOG_MAX_AGE_DAYS"),
            "RAMAN_BEAT_RUN_LOG_MAX_AGE_DAYS",
            int,
            minimum=0,
        ),
    )
