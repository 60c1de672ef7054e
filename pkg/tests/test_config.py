"""
Tests for environment-driven settings.
"""
import os
from unittest.mock import patch

import pytest

from raman_beat.config import SimulationSettings
from raman_beat.config_loader import load_settings_from_env
from raman_beat.config_validator import (
    get_optional_env,
    parse_bool,
    parse_number,
)
from raman_beat.exceptions import ConfigurationError


def load_with(env):
    """Load settings from exactly ``env``, ignoring any .env file."""
    with patch.dict(os.environ, env, clear=True), patch(
        "raman_beat.config_loader.load_dotenv"
    ):
        return load_settings_from_env()


class TestLoadSettings:
    """RAMAN_BEAT_* variables."""

    def test_defaults(self):
        settings = load_with({})
        assert settings == SimulationSettings()
        assert settings.run_log_dir is None
        assert settings.run_log_max_age_days is None

    def test_values_read(self):
        settings = load_with(
            {
                "RAMAN_BEAT_THREADS": "4",
                "RAMAN_BEAT_LOG_LEVEL": "debug",
                "RAMAN_BEAT_LOG_HARDWARE": "yes",
                "RAMAN_BEAT_OUT_DIR": "results",
                "RAMAN_BEAT_FORMAT": "JSON",
                "RAMAN_BEAT_RUN_LOG_DIR": "logs",
                "RAMAN_BEAT_RUN_LOG_MAX_FILES": "5",
                "RAMAN_BEAT_RUN_LOG_MAX_AGE_DAYS": "7",
            }
        )
        assert settings.worker_threads == 4
        assert settings.log_level == "DEBUG"
        assert settings.log_hardware_info is True
        assert settings.output_dir == "results"
        assert settings.output_format == "json"
        assert settings.run_log_dir == "logs"
        assert settings.run_log_max_files == 5
        assert settings.run_log_max_age_days == 7

    def test_invalid_log_level(self):
        with pytest.raises(ConfigurationError, match="RAMAN_BEAT_LOG_LEVEL"):
            load_with({"RAMAN_BEAT_LOG_LEVEL": "loud"})

    def test_invalid_format(self):
        with pytest.raises(ConfigurationError, match="'csv' or 'json'"):
            load_with({"RAMAN_BEAT_FORMAT": "xlsx"})

    def test_threads_must_be_integer(self):
        with pytest.raises(ConfigurationError, match="must be an integer"):
            load_with({"RAMAN_BEAT_THREADS": "many"})

    def test_threads_must_be_positive(self):
        with pytest.raises(ConfigurationError, match=">= 1"):
            load_with({"RAMAN_BEAT_THREADS": "0"})

    def test_placeholder_ignored(self):
        with pytest.warns(UserWarning, match="placeholder"):
            settings = load_with({"RAMAN_BEAT_OUT_DIR": "your_output_dir"})
        assert settings.output_dir == "out"


class TestEnvironmentParsing:
    """Helpers behind the settings loader."""

    @pytest.mark.parametrize("raw, expected", [("true", True), ("0", False), ("ON", True), (None, False)])
    def test_parse_bool(self, raw, expected):
        assert parse_bool(raw, "FLAG") is expected

    def test_parse_bool_rejects(self):
        with pytest.raises(ConfigurationError, match="FLAG must be a boolean"):
            parse_bool("maybe", "FLAG")

    def test_parse_number(self):
        assert parse_number("0.25", "LIMIT") == 0.25
        assert parse_number(None, "LIMIT") is None
        with pytest.raises(ConfigurationError, match="must be a number"):
            parse_number("fast", "LIMIT")

    def test_optional_env_default(self):
        with patch.dict(os.environ, {}, clear=True):
            assert get_optional_env("RAMAN_BEAT_UNSET", "fallback") == "fallback"
