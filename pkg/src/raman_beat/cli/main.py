"""
raman-beat command-line interface.

Every subcommand takes a scenario from ``--preset``, ``--config`` or both (the
file's sections replace the preset's), applies ``--set`` overrides and writes
its outputs under ``--out-dir/<scenario name>/<action>/``.

Exit codes: 0 success, 1 invalid scenario or settings, 2 runtime failure or a
sweep with failed points.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .. import __version__
from ..app import RamanBeatApp
from ..config import SimulationSettings
from ..config_loader import load_settings_from_env
from ..exceptions import ConfigurationError, RamanBeatError, ValidationError
from ..propagator.settings import Scheme
from ..schemas import RunRecord, SweepResult
from ..validators import InputValidator
from .scenario import list_presets, load_scenario

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
SWEEP_ACTIONS = ("prepare", "beat", "propagate", "cascade")

EPILOG = """
Examples:
  # Analytic beat of the fig2 preset
  raman-beat beat --preset fig2

  # Same scenario at a larger coupling, written as JSON
  raman-beat beat --preset fig2 --set run.alpha_z=1.4 --format json

  # Dispersive propagation of the 800 nm probe with the sideband solver
  raman-beat propagate --preset fig4 --scheme sideband-full

  # Length study, four points in parallel
  RAMAN_BEAT_THREADS=4 raman-beat sweep --preset fig4 --axis run.z_um --values 20,30,40,50

  # Sideband analysis of a stored field
  raman-beat spectrum --preset fig2 --input out/fig2/beat/field.csv

Environment Variables:
  RAMAN_BEAT_THREADS        Sweep worker pool size
  RAMAN_BEAT_LOG_LEVEL      Log level when --verbose is not given
  RAMAN_BEAT_OUT_DIR        Output directory (overridden by --out-dir)
  RAMAN_BEAT_FORMAT         csv or json (overridden by --format)
  RAMAN_BEAT_RUN_LOG_DIR    Directory for JSON-lines run logs
"""


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, help="Scenario JSON file")
    common.add_argument("--preset", type=str, help="Bundled scenario (see `raman-beat presets`)")
    common.add_argument("--out-dir", type=str, help="Output directory (default: out)")
    common.add_argument("--format", choices=("csv", "json"), help="Format of 1-D series")
    common.add_argument(
        "--set",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="Override a scenario field, e.g. run.z_um=40 (repeatable)",
    )
    common.add_argument(
        "--seed",
        type=int,
        help="Reserved; every scheme is deterministic and ignores it",
    )
    common.add_argument(
        "--keep-runs",
        type=int,
        metavar="N",
        help="Keep the N most recent run logs (enables run logging under OUT_DIR/runs)",
    )
    common.add_argument(
        "-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG"
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="raman-beat",
        description="Simulate a probe pulse beating with a prepared Raman coherence",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog=EPILOG,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = _common_options()
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("prepare", parents=[common], help="Resolve the medium and prepared state")
    sub.add_parser("beat", parents=[common], help="Exact dispersionless beat")
    propagate = sub.add_parser("propagate", parents=[common], help="Dispersive propagation")
    propagate.add_argument(
        "--scheme",
        choices=[s.value for s in Scheme],
        help="Propagation scheme (default: the scenario's run.scheme)",
    )
    sub.add_parser("cascade", parents=[common], help="Self-consistent drive cascade")
    spectrum = sub.add_parser("spectrum", parents=[common], help="Sideband analysis")
    spectrum.add_argument(
        "--input", type=str, help="Field CSV to analyse (default: the beat output)"
    )
    sweep = sub.add_parser("sweep", parents=[common], help="Run an action over a parameter axis")
    sweep.add_argument("--axis", required=True, help="Dotted scenario field, e.g. run.z_um")
    sweep.add_argument(
        "--values", required=True, help="Comma list (20,30,40) or start:stop:count (0:1:9)"
    )
    sweep.add_argument("--action", choices=SWEEP_ACTIONS, default="beat")
    sweep.add_argument("--scheme", choices=[s.value for s in Scheme])
    sub.add_parser("presets", help="List bundled scenario presets")
    return parser


def configure_logging(verbose: int, default_level: str = "WARNING") -> None:
    """The library never installs handlers; the CLI does, once."""
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, default_level.upper(), logging.WARNING)
    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=[logging.StreamHandler()])


def _settings_from_args(args: argparse.Namespace) -> SimulationSettings:
    settings = load_settings_from_env()
    if args.out_dir:
        settings.output_dir = args.out_dir
    if args.format:
        settings.output_format = args.format
    if args.keep_runs is not None:
        if args.keep_runs < 1:
            raise ConfigurationError("--keep-runs must be at least 1")
        settings.run_log_max_files = args.keep_runs
        if not settings.run_log_dir:
            settings.run_log_dir = str(Path(settings.output_dir) / "runs")
    return settings


def print_record(record: RunRecord) -> None:
    print(f"{record.action} '{record.scenario}' [{record.scenario_hash[:12]}]: {record.status}")
    for path in record.files:
        print(f"  {path}")
    for warning in record.warnings:
        print(f"  warning: {warning}")


def print_sweep(result: SweepResult) -> None:
    print(f"sweep over {result.axis}: {len(result.records)} point(s), {len(result.failures)} failed")
    for record in result.records:
        detail = f"{len(record.files)} file(s)" if record.ok else f"{record.error_type}: {record.error}"
        print(f"  {result.axis}={record.axis_value:g}: {record.status} ({detail})")


def _options(args: argparse.Namespace, action: str) -> dict:
    if action == "propagate" and getattr(args, "scheme", None):
        return {"scheme": args.scheme}
    if action == "spectrum" and getattr(args, "input", None):
        return {"field_path": args.input}
    return {}


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv_list: List[str] = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv_list)

    if args.command == "presets":
        for name in list_presets():
            print(name)
        return 0

    app: Optional[RamanBeatApp] = None
    try:
        settings = _settings_from_args(args)
        configure_logging(args.verbose, settings.log_level)
        if args.seed is not None:
            logger.debug(f"--seed {args.seed} ignored: all schemes are deterministic")

        scenario = load_scenario(args.config, args.preset, args.set)
        app = RamanBeatApp(settings)
        app.initialize(command=" ".join(["raman-beat", *argv_list]))

        if args.command == "sweep":
            values = InputValidator.parse_sweep_values(args.values)
            action = args.action
            result = app.sweep(scenario, action, args.axis, values, **_options(args, action))
            print_sweep(result)
            return 0 if result.ok else 2

        record = app.run(scenario, args.command, **_options(args, args.command))
        print_record(record)
        return 0
    except (ValidationError, ConfigurationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        if app and app.run_logger:
            app.run_logger.log_error(exc, context=args.command)
        return 1
    except RamanBeatError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    finally:
        if app:
            app.close()


if __name__ == "__main__":
    sys.exit(main())
