from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

from ..core.config import Settings, get_settings
from ..core.errors import EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, ScenarioError, TerraError
from ..core.logging import configure_logging
from ..core.tracing import init_tracing, run_span
from ..modules.channel.calibration import calibrate_surface, geometry_grid, median_additional_loss_db
from ..modules.channel.models import SURFACE_TARGETS_DB, SurfaceKind
from ..modules.channel.schemas import CalibrationGridConfig, RadioConfig
from ..modules.engine.batch import compare
from ..modules.engine.loader import load_scenario
from ..modules.engine.service import run
from ..modules.protocol.schemas import ProtocolSelector
from ..modules.trace.service import parse_trace, replay
from .bundle import write_compare_bundle, write_run_bundle

logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="terra-sim", description="60 GHz link simulator with ground-reflection blockage recovery")
    parser.add_argument("--log-level", dest="log_level", default=None, help="Override TERRA_LOG_LEVEL")
    parser.add_argument("--workers", type=int, default=None, help="Worker processes for batch runs (overrides TERRA_WORKERS)")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def scenario_args(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--config", default=None, help="Scenario YAML file or bundled scenario name")
        sub.add_argument(
            "--set",
            dest="overrides",
            action="append",
            default=[],
            metavar="KEY=VALUE",
            help="Override a configuration key (repeatable), e.g. --set blockage.arrival_rate_per_s=1.0",
        )
        sub.add_argument("--out", default=None, help="Output directory")

    run_cmd = commands.add_parser("run", help="Simulate one scenario and write an output bundle")
    scenario_args(run_cmd)
    run_cmd.add_argument("--seed", type=int, default=None)
    run_cmd.add_argument("--protocol", choices=[p.value for p in ProtocolSelector], default=None)

    compare_cmd = commands.add_parser("compare", help="Paired Terra and baseline runs over a seed list")
    scenario_args(compare_cmd)
    compare_cmd.add_argument("--seeds", required=True, help="Seed list such as 0-49 or 1,2,7")

    calibrate_cmd = commands.add_parser("calibrate", help="Fit a surface reflection loss to a median additional loss")
    calibrate_cmd.add_argument("--surface", choices=[k.value for k in SurfaceKind], default=SurfaceKind.CONCRETE.value)
    calibrate_cmd.add_argument("--target", type=float, default=None, help="Median additional loss in dB")
    calibrate_cmd.add_argument("--h-t", dest="h_t", type=float, default=None)
    calibrate_cmd.add_argument("--h-r", dest="h_r", type=float, default=None)
    calibrate_cmd.add_argument("--distances", default=None, help="Comma separated link distances in m")

    replay_cmd = commands.add_parser("replay", help="Drive the protocol with a recorded per-beam RSS trace")
    replay_cmd.add_argument("trace", help="Trace CSV file")
    scenario_args(replay_cmd)
    replay_cmd.add_argument("--protocol", choices=[p.value for p in ProtocolSelector], default=None)
    return parser


def parse_seeds(text: str) -> list[int]:
    seeds: list[int] = []
    for part in (p.strip() for p in text.split(",")):
        if not part:
            continue
        first, sep, last = part.partition("-")
        try:
            if sep and first:
                seeds.extend(range(int(first), int(last) + 1))
            else:
                seeds.append(int(part))
        except ValueError:
            raise ScenarioError(f"Invalid seed list '{text}'") from None
    if not seeds:
        raise ScenarioError("Seed list is empty")
    return seeds


def cmd_run(args: argparse.Namespace, settings: Settings) -> int:
    overrides = list(args.overrides)
    if args.seed is not None:
        overrides.append(f"seed={args.seed}")
    if args.protocol:
        overrides.append(f"protocol={args.protocol}")
    scenario = load_scenario(args.config, overrides)
    result = run(scenario)
    out_dir = Path(args.out or Path(settings.OUTPUT_DIR) / f"{scenario.name}-{scenario.protocol.value}-{scenario.seed}")
    write_run_bundle(result, out_dir, {"command": "run"})
    _print_summary("Run", out_dir, {
        "events": result.summary.event_count,
        "outside_outage": result.summary.outage_fraction,
        "within_6db": result.summary.within6db_fraction,
        "mean_event_per": result.summary.mean_event_per,
        "total_outage_ms": result.summary.total_outage_ms,
    })
    return EXIT_OK


def cmd_compare(args: argparse.Namespace, settings: Settings) -> int:
    seeds = parse_seeds(args.seeds)
    scenario = load_scenario(args.config, args.overrides)
    comparison = compare(scenario, seeds, workers=args.workers or settings.worker_count)
    out_dir = Path(args.out or Path(settings.OUTPUT_DIR) / f"{scenario.name}-compare")
    write_compare_bundle(comparison, out_dir, {"command": "compare"})
    _print_summary("Comparison", out_dir, comparison.aggregate())
    if comparison.violations:
        for violation in comparison.violations:
            print(f"violation: {violation}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


def cmd_calibrate(args: argparse.Namespace, settings: Settings) -> int:
    kind = SurfaceKind(args.surface)
    target = args.target if args.target is not None else SURFACE_TARGETS_DB.get(kind)
    if target is None:
        raise ScenarioError(f"Surface '{kind.value}' has no measured target; pass --target")
    grid_config = CalibrationGridConfig()
    update: dict = {}
    if args.h_t is not None:
        update["h_t_m"] = args.h_t
    if args.h_r is not None:
        update["h_r_m"] = args.h_r
    if args.distances:
        update["distances_m"] = _parse_distances(args.distances)
    try:
        grid_config = CalibrationGridConfig.model_validate({**grid_config.model_dump(), **update})
    except ValidationError as exc:
        error = exc.errors()[0]
        key = ".".join(str(part) for part in error["loc"]) or "<root>"
        raise ScenarioError(f"Invalid calibration geometry '{key}': {error['msg']}") from None
    grid = geometry_grid(grid_config)
    radio = RadioConfig()
    with run_span("channel.calibrate", surface=kind.value, target_db=target):
        surface = calibrate_surface(radio, grid, target, kind=kind)
        median = median_additional_loss_db(radio, grid, surface)
    print(f"surface: {kind.value}")
    print(f"reflection_loss_db: {surface.reflection_loss_db:.4f}")
    print(f"verified_median_additional_loss_db: {median:.4f}")
    return EXIT_OK


def cmd_replay(args: argparse.Namespace, settings: Settings) -> int:
    overrides = list(args.overrides)
    if args.protocol:
        overrides.append(f"protocol={args.protocol}")
    scenario = load_scenario(args.config, overrides)
    path = Path(args.trace)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError(f"Cannot read trace '{path}': {exc.strerror}") from None
    except UnicodeDecodeError:
        raise ScenarioError(f"Trace '{path}' is not UTF-8 text") from None
    result = replay(parse_trace(text), scenario)
    out_dir = Path(args.out or Path(settings.OUTPUT_DIR) / f"{path.stem}-replay-{scenario.protocol.value}")
    write_run_bundle(result, out_dir, {"command": "replay", "trace": str(path)})
    _print_summary("Replay", out_dir, {
        "ticks": len(result.records),
        "outside_outage": result.summary.outage_fraction,
        "within_6db": result.summary.within6db_fraction,
    })
    return EXIT_OK


COMMANDS = {
    "run": cmd_run,
    "compare": cmd_compare,
    "calibrate": cmd_calibrate,
    "replay": cmd_replay,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    settings = get_settings()
    if args.log_level:
        settings = settings.model_copy(update={"LOG_LEVEL": args.log_level})
    configure_logging(settings)
    init_tracing(settings)
    try:
        return COMMANDS[args.command](args, settings)
    except TerraError as exc:
        logger.debug("Command %s failed", args.command, exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


def _parse_distances(raw: str) -> list[float]:
    try:
        return [float(d) for d in raw.split(",") if d.strip()]
    except ValueError:
        raise ScenarioError(f"--distances takes comma-separated metres, got '{raw}'") from None


def _print_summary(title: str, out_dir: Path, values: dict) -> None:
    print(f"{title} written to {out_dir}")
    for key, value in values.items():
        text = f"{value:.4f}" if isinstance(value, float) else str(value)
        print(f"  {key}: {text}")


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
