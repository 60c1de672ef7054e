"""
Numeric input validation for scenario runs.
"""
import logging
import math
from typing import Any, Dict, Iterable, List

from .core.fields import SampledField
from .core.grids import TimeGrid
from .exceptions import GridResolutionError, ValidationError

logger = logging.getLogger(__name__)


class InputValidator:
    """
    Checks that resolved run inputs fit together before any propagation starts.
    """

    MIN_POINTS_PER_CYCLE = 8
    MAX_SWEEP_POINTS = 1000

    @staticmethod
    def validate_sampling(grid: TimeGrid, omega0: float, alpha_z: float = 0.0) -> None:
        """
        Require at least MIN_POINTS_PER_CYCLE samples per period of the fastest
        carrier, e^{αz}·ω₀.

        :raises GridResolutionError: Naming the largest admissible dt
        """
        fastest = omega0 * math.exp(alpha_z)
        required = 2.0 * math.pi / (InputValidator.MIN_POINTS_PER_CYCLE * fastest)
        if grid.dt > required:
            raise GridResolutionError(
                f"Grid step {grid.dt:.3e} s under-resolves the compressed carrier "
                f"{fastest:.3e} rad/s; use dt <= {required:.3e} s "
                f"(n >= {math.ceil(grid.n * grid.dt / required)} on this window)."
            )

    @staticmethod
    def validate_probe_window(field: SampledField, name: str = "probe") -> None:
        """
        :raises WindowingError: If the field has not decayed at the grid edges
        """
        field.check_windowing()
        logger.debug(f"{name} decays within the grid window")

    @staticmethod
    def resolve_axis(data: Dict[str, Any], axis: str) -> float:
        """
        Current value of the dotted scenario field ``axis``.

        :raises ValidationError: If the path does not name a numeric field
        """
        node: Any = data
        for part in axis.split("."):
            if not isinstance(node, dict) or part not in node:
                raise ValidationError(f"Sweep axis '{axis}' does not name a scenario field")
            node = node[part]
        if node is not None and (isinstance(node, bool) or not isinstance(node, (int, float))):
            raise ValidationError(f"Sweep axis '{axis}' is not numeric (value {node!r})")
        return node

    @staticmethod
    def validate_sweep_values(values: Iterable[float]) -> List[float]:
        """
        :raises ValidationError: For an empty, oversized or non-finite value list
        """
        try:
            numbers = [float(v) for v in values]
        except (TypeError, ValueError):
            raise ValidationError("Sweep values must be numbers")
        if not numbers:
            raise ValidationError("Sweep needs at least one value")
        if len(numbers) > InputValidator.MAX_SWEEP_POINTS:
            raise ValidationError(
                f"Sweep exceeds maximum of {InputValidator.MAX_SWEEP_POINTS} points"
            )
        if not all(math.isfinite(v) for v in numbers):
            raise ValidationError("Sweep values must be finite")
        return numbers

    @staticmethod
    def parse_sweep_values(text: str) -> List[float]:
        """
        Parse ``start:stop:count`` (inclusive, evenly spaced) or ``v1,v2,...``.

        :raises ValidationError: If the text matches neither form
        """
        text = text.strip()
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise ValidationError(f"Range '{text}' must have the form start:stop:count")
            try:
                start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
            except ValueError:
                raise ValidationError(f"Range '{text}' must have the form start:stop:count")
            if count < 1:
                raise ValidationError(f"Range '{text}' needs a positive count")
            if count == 1:
                return [start]
            step = (stop - start) / (count - 1)
            return InputValidator.validate_sweep_values(start + i * step for i in range(count))
        return InputValidator.validate_sweep_values(v for v in text.split(",") if v.strip())
