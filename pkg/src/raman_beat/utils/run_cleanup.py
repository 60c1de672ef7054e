"""
Retention for JSON-lines run logs.

Logs past ``max_age_days`` go first; of the rest only the newest
``max_files`` are kept.
"""
import logging
import time
from pathlib import Path
from typing import List, Optional

logger = logging.getLogger(__name__)

RUN_LOG_PATTERN = "runs_*.jsonl"
SECONDS_PER_DAY = 86400.0


def _expired(logs: List[Path], max_files: int, max_age_days: Optional[int]) -> List[Path]:
    """Logs to delete, given ``logs`` sorted newest first."""
    if max_age_days is not None:
        cutoff = time.time() - max_age_days * SECONDS_PER_DAY
        stale = [path for path in logs if path.stat().st_mtime < cutoff]
    else:
        stale = []
    survivors = [path for path in logs if path not in stale]
    return stale + survivors[max_files:]


def cleanup_run_logs(
    logs_dir: str,
    max_files: int = 20,
    max_age_days: Optional[int] = None,
    pattern: str = RUN_LOG_PATTERN,
) -> int:
    """
    Prune run logs in ``logs_dir`` by age and count.

    :param logs_dir: Directory holding the run logs
    :param max_files: Number of most recent logs to keep
    :param max_age_days: Delete logs older than this many days; None disables the age limit
    :param pattern: Glob selecting run logs; other files are never touched
    :return: Number of logs deleted
    """
    root = Path(logs_dir)
    if not root.is_dir():
        return 0

    logs = sorted(root.glob(pattern), key=lambda path: path.stat().st_mtime, reverse=True)
    deleted = 0
    for path in _expired(logs, max_files, max_age_days):
        try:
            path.unlink()
        except OSError as e:
            logger.warning(f"Could not remove run log {path.name}: {e}")
            continue
        deleted += 1
        logger.debug(f"Removed run log {path.name}")

    if deleted:
        logger.info(f"Pruned {deleted} run log(s) in {logs_dir}")
    return deleted
