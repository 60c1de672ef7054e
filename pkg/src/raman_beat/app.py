"""
Public application facade for raman-beat.

This is the single stable entry point for the library: it wires settings,
the simulation service, result exporters and the run log. Internal module
structure can change freely behind it.
"""
import copy
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Tuple, Union

from . import __version__
from .cli.run_logger import RunLogger, run_log_path
from .cli.scenario import Scenario, apply_overrides, validate_scenario
from .config import SimulationSettings
from .exceptions import RamanBeatError
from .exporters import ResultExporter
from .schemas import ActionResult, RunRecord, SweepResult
from .service import SimulationService
from .utils.hardware import HardwareDetector
from .utils.run_cleanup import cleanup_run_logs
from .validators import InputValidator

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _now() -> str:
    return datetime.now().isoformat()


def _run_point(
    settings: SimulationSettings,
    data: Dict[str, Any],
    action: str,
    axis: str,
    value: Union[int, float],
    options: Dict[str, Any],
) -> Tuple[str, str, Any]:
    """
    One sweep point, run in a worker process.

    :return: ("ok", digest, ActionResult) or ("error", digest, (error type, message))
    """
    digest = ""
    try:
        point = apply_overrides(copy.deepcopy(data), [f"{axis}={json.dumps(value)}"])
        scenario = validate_scenario(point)
        digest = scenario.digest()
        return "ok", digest, SimulationService(settings).run(scenario, action, **options)
    except Exception as exc:
        return "error", digest, (type(exc).__name__, str(exc))


class RamanBeatApp:
    """
    Public application facade.

    Usage:
        settings = load_settings_from_env()
        app = RamanBeatApp(settings)
        app.initialize()
        record = app.run(load_scenario(preset="fig2"), "beat")
        app.close()
    """

    def __init__(self, settings: SimulationSettings):
        self._settings = settings
        self._service: Optional[SimulationService] = None
        self._run_logger: Optional[RunLogger] = None

    @property
    def settings(self) -> SimulationSettings:
        return self._settings

    @property
    def run_logger(self) -> Optional[RunLogger]:
        return self._run_logger

    def initialize(self, command: Optional[str] = None) -> None:
        """
        Create the service and open the run log.

        Old run logs are pruned before the new one is opened. Call this once
        before run() or sweep().

        :param command: Command line recorded in the run-log session header
        """
        if self._service:
            return
        self._service = SimulationService(self._settings)

        if self._settings.run_log_dir:
            cleanup_run_logs(
                self._settings.run_log_dir,
                max_files=self._settings.run_log_max_files,
                max_age_days=self._settings.run_log_max_age_days,
            )
            self._run_logger = RunLogger(run_log_path(self._settings.run_log_dir), command)
            logger.info(f"Logging runs to {self._run_logger.log_file}")

    def close(self) -> None:
        if self._run_logger:
            self._run_logger.close()
            self._run_logger = None

    def _require_service(self) -> SimulationService:
        if not self._service:
            raise RuntimeError("App not initialized. Call initialize() first.")
        return self._service

    def run(
        self, scenario: Scenario, action: str, out_dir: Optional[PathLike] = None, **options
    ) -> RunRecord:
        """
        Run one action and write its outputs and RunRecord.

        Files go to ``<out_dir>/<scenario name>/<action>/``.

        :param options: Action options (``scheme`` for propagate, ``field_path`` for spectrum)
        :raises RuntimeError: If initialize() has not been called
        :raises RamanBeatError: If the run fails; the failure is still logged
        """
        service = self._require_service()
        target = Path(out_dir or self._settings.output_dir) / scenario.name / action
        started = _now()
        try:
            result = service.run(scenario, action, **options)
        except RamanBeatError as exc:
            self._failed_record(
                scenario.name, scenario.digest(), action, started, type(exc).__name__, str(exc)
            )
            raise
        record = self._record(scenario.name, scenario.digest(), action, started, result, target)
        logger.info(f"{action} finished for '{scenario.name}': {len(record.files)} file(s) in {target}")
        return record

    def sweep(
        self,
        scenario: Scenario,
        action: str,
        axis: str,
        values: Iterable[float],
        out_dir: Optional[PathLike] = None,
        **options,
    ) -> SweepResult:
        """
        Run ``action`` at every value of the dotted scenario field ``axis``.

        Points run in a process pool of ``worker_threads`` workers. Outputs are
        written in the order of ``values`` under ``point_NNN`` directories, plus
        a ``sweep`` table with one row per point. Failed points are recorded
        and the remaining points still run.

        :raises ValidationError: If the axis is not a numeric scenario field or values are invalid
        """
        self._require_service()
        data = scenario.model_dump(mode="json")
        current = InputValidator.resolve_axis(data, axis)
        points: List[Union[int, float]] = InputValidator.validate_sweep_values(values)
        if isinstance(current, int):
            points = [int(v) if float(v).is_integer() else v for v in points]

        target = Path(out_dir or self._settings.output_dir) / scenario.name / f"sweep_{axis}"
        worker_settings = replace(self._settings, log_hardware_info=False)
        workers = min(HardwareDetector.select_workers(self._settings.worker_threads), len(points))
        logger.info(f"Sweeping {axis} over {len(points)} point(s) with {workers} worker(s)")

        started = _now()
        if workers == 1:
            outcomes = [
                _run_point(worker_settings, data, action, axis, value, options) for value in points
            ]
        else:
            with ProcessPoolExecutor(max_workers=workers) as executor:
                futures = [
                    executor.submit(_run_point, worker_settings, data, action, axis, value, options)
                    for value in points
                ]
                outcomes = [future.result() for future in futures]

        records = []
        for index, (value, (status, digest, payload)) in enumerate(zip(points, outcomes)):
            if status == "ok":
                record = self._record(
                    scenario.name, digest, action, started, payload,
                    target / f"point_{index:03d}", axis=axis, axis_value=value,
                )
            else:
                error_type, message = payload
                logger.warning(f"Sweep point {axis}={value} failed: {error_type}: {message}")
                record = self._failed_record(
                    scenario.name, digest, action, started, error_type, message, axis, value
                )
            records.append(record)

        result = SweepResult(axis=axis, values=[float(v) for v in points], records=records)
        exporter = ResultExporter(target, self._settings.output_format)
        exporter.write_series("sweep", result.table())
        exporter.write_json("sweep", {"axis": axis, "records": [r.to_dict() for r in records]})
        if result.failures:
            logger.warning(f"{len(result.failures)} of {len(records)} sweep point(s) failed")
        return result

    def _record(
        self,
        name: str,
        digest: str,
        action: str,
        started: str,
        result: ActionResult,
        target: Path,
        axis: Optional[str] = None,
        axis_value: Optional[float] = None,
    ) -> RunRecord:
        exporter = ResultExporter(target, self._settings.output_format)
        files = [str(exporter.write_series(key, frame)) for key, frame in result.series.items()]
        if result.metrics:
            metrics = {"metrics": result.metrics, "warnings": result.warnings}
            files.append(str(exporter.write_json("metrics", metrics)))
        record = RunRecord(
            scenario=name,
            scenario_hash=digest,
            action=action,
            version=__version__,
            parameters=result.parameters,
            metrics=result.metrics,
            files=files,
            started_at=started,
            finished_at=_now(),
            warnings=list(result.warnings),
            axis=axis,
            axis_value=axis_value,
        )
        exporter.write_json("record", record.to_dict())
        self._log(record)
        return record

    def _failed_record(
        self,
        name: str,
        digest: str,
        action: str,
        started: str,
        error_type: str,
        message: str,
        axis: Optional[str] = None,
        axis_value: Optional[float] = None,
    ) -> RunRecord:
        record = RunRecord(
            scenario=name,
            scenario_hash=digest,
            action=action,
            version=__version__,
            parameters={},
            metrics={},
            files=[],
            started_at=started,
            finished_at=_now(),
            status="error",
            error_type=error_type,
            error=message,
            axis=axis,
            axis_value=axis_value,
        )
        self._log(record)
        return record

    def _log(self, record: RunRecord) -> None:
        if self._run_logger:
            self._run_logger.log_record(record)
