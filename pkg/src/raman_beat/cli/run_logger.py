"""
JSON-lines history of CLI runs.

Each session appends a ``session_start`` line, one line per run or sweep
point, and a ``session_end`` line with the duration.
"""
import json
from datetime import datetime
from pathlib import Path
from typing import Optional, Union

from ..exporters import to_jsonable
from ..schemas import RunRecord


def run_log_path(logs_dir: Union[str, Path]) -> Path:
    """Timestamped log file under ``logs_dir`` (runs_YYYYMMDD_HHMMSS.jsonl)."""
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
    return Path(logs_dir) / f"runs_{timestamp}.jsonl"


class RunLogger:
    """Logs run records to a JSON-lines file."""

    def __init__(self, log_file: Union[str, Path], command: Optional[str] = None):
        self.log_file = Path(log_file)
        self.log_file.parent.mkdir(parents=True, exist_ok=True)
        self.session_start = datetime.now()
        self.runs = 0
        self.failures = 0
        self._write_entry(
            {
                "type": "session_start",
                "timestamp": self.session_start.isoformat(),
                "command": command,
            }
        )

    def log_record(self, record: RunRecord) -> None:
        entry = {
            "type": "run",
            "timestamp": record.finished_at,
            "action": record.action,
            "scenario": record.scenario,
            "scenario_hash": record.scenario_hash,
            "status": record.status,
        }
        if record.axis is not None:
            entry["axis"] = record.axis
            entry["axis_value"] = record.axis_value
        if record.ok:
            entry["metrics"] = record.metrics
        else:
            entry["error_type"] = record.error_type
            entry["error"] = record.error
            self.failures += 1
        self.runs += 1
        self._write_entry(entry)

    def log_error(self, error: Exception, context: str = "startup") -> None:
        """Log an error raised outside any run, e.g. while loading the scenario."""
        self.failures += 1
        self._write_entry(
            {
                "type": "error",
                "timestamp": datetime.now().isoformat(),
                "context": context,
                "error": str(error),
                "error_type": type(error).__name__,
            }
        )

    def _write_entry(self, entry: dict) -> None:
        with open(self.log_file, "a", encoding="utf-8", newline="\n") as f:
            f.write(json.dumps(to_jsonable(entry), ensure_ascii=False) + "\n")

    def close(self) -> None:
        session_end = datetime.now()
        self._write_entry(
            {
                "type": "session_end",
                "timestamp": session_end.isoformat(),
                "duration_s": round((session_end - self.session_start).total_seconds(), 3),
                "runs": self.runs,
                "failures": self.failures,
            }
        )
