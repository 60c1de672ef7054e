"""
Environment value parsing for the settings loader.
"""
import os
import warnings
from typing import Optional

from .exceptions import ConfigurationError

PLACEHOLDER_MARKERS = ("your_", "your-", "placeholder", "changeme", "<")


def get_optional_env(key: str, default: Optional[str] = None) -> Optional[str]:
    """
    Read ``key`` from the environment, falling back to ``default``.

    Template values left over from an example .env (``your_...``, ``changeme``)
    are ignored with a warning.
    """
    value = os.environ.get(key)
    if value is None or value == "":
        return default
    if _is_placeholder(value):
        warnings.warn(f"{key}={value!r} looks like a placeholder; using the default", UserWarning)
        return default
    return value


def parse_bool(value: Optional[str], key: str) -> bool:
    """
    Parse a boolean environment value ("true"/"false", "1"/"0", "yes"/"no").

    :raises ConfigurationError: If the value is not recognised
    """
    if value is None:
        return False
    normalized = value.strip().lower()
    if normalized in ("true", "1", "yes", "on"):
        return True
    if normalized in ("false", "0", "no", "off", ""):
        return False
    raise ConfigurationError(
        f"{key} must be a boolean, got {value!r}.\n"
        f"Use one of: true, false, 1, 0, yes, no."
    )


def parse_number(value: Optional[str], key: str, kind: type = float, minimum: Optional[float] = None):
    """
    Parse a numeric environment value.

    :param value: Raw string value
    :param key: Environment variable name (for error messages)
    :param kind: ``int`` or ``float``
    :param minimum: Optional inclusive lower bound
    :return: Parsed number, or None when value is None
    :raises ConfigurationError: If the value is not a number or is below the bound
    """
    if value is None:
        return None
    try:
        number = kind(value)
    except (TypeError, ValueError):
        raise ConfigurationError(
            f"{key} must be a{'n integer' if kind is int else ' number'}, got {value!r}.\n"
            f"Example: export {key}={'4' if kind is int else '0.1'}"
        )
    if minimum is not None and number < minimum:
        raise ConfigurationError(f"{key} must be >= {minimum}, got {number}.")
    return number


def _is_placeholder(value: str) -> bool:
    lowered = value.lower()
    return any(marker in lowered for marker in PLACEHOLDER_MARKERS)
