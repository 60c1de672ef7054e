"""
Tests for result writers, the run-log history and sweep tables.
"""
import json
import os
import time
from unittest.mock import patch

import numpy as np
import pandas as pd
import pytest

from raman_beat.cli.run_logger import RunLogger, run_log_path
from raman_beat.exporters import ResultExporter, to_jsonable
from raman_beat.schemas import RunRecord, SweepResult
from raman_beat.utils import HardwareDetector, cleanup_run_logs


def make_record(status="ok", value=None, metrics=None):
    return RunRecord(
        scenario="fig2",
        scenario_hash="ab" * 32,
        action="beat",
        version="0.1.0",
        parameters={},
        metrics=metrics if metrics is not None else {"beat": {"alpha_z": 0.6, "label": "x"}},
        files=[],
        started_at="2026-01-01T00:00:00",
        finished_at="2026-01-01T00:00:01",
        status=status,
        error_type=None if status == "ok" else "GridResolutionError",
        error=None if status == "ok" else "under-resolved",
        axis="run.alpha_z" if value is not None else None,
        axis_value=value,
    )


class TestToJsonable:
    def test_numpy_and_complex(self):
        payload = {
            "array": np.arange(3),
            "scalar": np.float64(0.5),
            "count": np.int64(7),
            "flag": np.bool_(True),
            "coherence": np.complex128(0.3 - 0.1j),
            1: (1.0, 2.0),
        }
        assert to_jsonable(payload) == {
            "array": [0, 1, 2],
            "scalar": 0.5,
            "count": 7,
            "flag": True,
            "coherence": {"re": 0.3, "im": -0.1},
            "1": [1.0, 2.0],
        }

    def test_non_finite(self):
        assert to_jsonable([float("inf"), -np.inf, float("nan")]) == ["inf", "-inf", None]


class TestResultExporter:
    """Series and JSON files."""

    @pytest.fixture
    def frame(self):
        return pd.DataFrame({"tau_fs": [0.0, 0.1, 0.2], "output_V_per_m": [1 / 3, -2.5e7, 1e-300]})

    def test_csv_reads_back_exactly(self, tmp_path, frame):
        path = ResultExporter(tmp_path / "fig2" / "beat").write_series("field", frame)
        assert path.name == "field.csv"
        restored = pd.read_csv(path)
        assert list(restored.columns) == ["tau_fs", "output_V_per_m"]
        assert restored["output_V_per_m"].tolist() == frame["output_V_per_m"].tolist()
        assert b"\r\n" not in path.read_bytes()

    def test_json_series(self, tmp_path, frame):
        path = ResultExporter(tmp_path, fmt="json").write_series("field", frame)
        assert path.suffix == ".json"
        assert json.loads(path.read_text(encoding="utf-8"))["tau_fs"] == [0.0, 0.1, 0.2]

    def test_write_json(self, tmp_path):
        path = ResultExporter(tmp_path).write_json("record", make_record().to_dict())
        document = json.loads(path.read_text(encoding="utf-8"))
        assert document["status"] == "ok"
        assert document["axis"] is None


class TestRunLogger:
    """JSON-lines session history."""

    def read(self, path):
        return [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines()]

    def test_session(self, tmp_path):
        run_logger = RunLogger(tmp_path / "runs" / "runs_test.jsonl", command="raman-beat beat")
        run_logger.log_record(make_record())
        run_logger.log_record(make_record(status="error", value=5.0))
        run_logger.log_error(ValueError("bad scenario"), context="sweep")
        run_logger.close()

        entries = self.read(run_logger.log_file)
        assert [e["type"] for e in entries] == ["session_start", "run", "run", "error", "session_end"]
        assert entries[0]["command"] == "raman-beat beat"
        assert entries[1]["metrics"]["beat"]["alpha_z"] == 0.6
        assert entries[2]["error_type"] == "GridResolutionError"
        assert entries[2]["axis_value"] == 5.0
        assert entries[3]["context"] == "sweep"
        assert entries[4]["runs"] == 2
        assert entries[4]["failures"] == 2

    def test_log_path(self, tmp_path):
        path = run_log_path(tmp_path)
        assert path.parent == tmp_path
        assert path.name.startswith("runs_") and path.suffix == ".jsonl"


class TestRunLogCleanup:
    """Retention of old run logs."""

    @pytest.fixture
    def logs(self, tmp_path):
        now = time.time()
        for age_days in range(5):
            path = tmp_path / f"runs_2026010{age_days}_000000.jsonl"
            path.write_text("{}\n", encoding="utf-8")
            stamp = now - age_days * 86400 - 60
            os.utime(path, (stamp, stamp))
        (tmp_path / "notes.txt").write_text("keep", encoding="utf-8")
        return tmp_path

    def test_keeps_most_recent(self, logs):
        assert cleanup_run_logs(str(logs), max_files=2) == 3
        remaining = sorted(p.name for p in logs.glob("runs_*.jsonl"))
        assert remaining == ["runs_20260100_000000.jsonl", "runs_20260101_000000.jsonl"]
        assert (logs / "notes.txt").exists()

    def test_age_limit(self, logs):
        assert cleanup_run_logs(str(logs), max_files=20, max_age_days=2) == 3
        assert len(list(logs.glob("runs_*.jsonl"))) == 2

    def test_missing_directory(self, tmp_path):
        assert cleanup_run_logs(str(tmp_path / "absent")) == 0


class TestSweepResult:
    def test_table(self):
        records = [
            make_record(value=0.2, metrics={"beat": {"alpha_z": 0.2}, "scheme": "dispersionless"}),
            make_record(status="error", value=5.0, metrics={}),
        ]
        result = SweepResult(axis="run.alpha_z", values=[0.2, 5.0], records=records)
        table = result.table()
        assert not result.ok
        assert len(result.failures) == 1
        assert table["run.alpha_z"].tolist() == [0.2, 5.0]
        assert table["status"].tolist() == ["ok", "error"]
        assert table.loc[0, "beat.alpha_z"] == 0.2
        assert "scheme" not in table.columns


class TestHardwareDetector:
    def test_workers_capped_at_cpus(self):
        with patch.object(HardwareDetector, "detect_cpu_count", return_value=2):
            assert HardwareDetector.select_workers(8) == 2
            assert HardwareDetector.select_workers(1) == 1
            assert HardwareDetector.select_workers(None) == 2

    def test_detect_all(self):
        info = HardwareDetector.detect_all(1)
        assert info.worker_threads == 1
        assert set(info.to_dict()) >= {"cpu_count", "numpy_version", "scipy_version"}
