"""Seeded batch runs and paired Terra/baseline comparisons."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from typing import Sequence

import numpy as np

from ...core.config import get_settings
from ...core.errors import ScenarioError
from ...core.logging import configure_logging
from ...core.tracing import run_span
from ..protocol.schemas import ProtocolSelector
from .models import EventOutcome, RunResult
from .schemas import ScenarioConfig
from .service import run

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class PairedEvent:
    seed: int
    track_index: int
    occlusion_start_ms: int
    terra_per: float | None
    baseline_per: float | None
    baseline_outage_ms: int = 0


@dataclass(slots=True)
class Comparison:
    seeds: list[int]
    terra: list[RunResult]
    baseline: list[RunResult]
    paired_events: list[PairedEvent] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)

    def aggregate(self) -> dict[str, float | int | None]:
        terra_pers = [e.terra_per for e in self.paired_events if e.terra_per is not None]
        base_pers = [e.baseline_per for e in self.paired_events if e.baseline_per is not None]
        terra_outage = sum(r.summary.total_outage_ms for r in self.terra)
        base_outage = sum(r.summary.total_outage_ms for r in self.baseline)
        return {
            "runs": len(self.seeds),
            "events": len(self.paired_events),
            "compared_events": sum(
                e.terra_per is not None and e.baseline_per is not None for e in self.paired_events
            ),
            "terra_mean_event_per": float(np.mean(terra_pers)) if terra_pers else None,
            "baseline_mean_event_per": float(np.mean(base_pers)) if base_pers else None,
            "terra_total_outage_ms": terra_outage,
            "baseline_total_outage_ms": base_outage,
            "outage_ms_saved": base_outage - terra_outage,
            "violations": len(self.violations),
        }


def run_batch(
    scenario: ScenarioConfig,
    seeds: Sequence[int],
    selector: ProtocolSelector | None = None,
    workers: int | None = None,
    keep_records: bool = False,
) -> list[RunResult]:
    """Run one scenario per seed; results come back in seed-list order.

    Tick records are dropped once a run is summarized unless ``keep_records``
    is set, so a batch holds summaries, events and action logs only.
    """
    update = {} if selector is None else {"protocol": selector}
    scenarios = [scenario.model_copy(update={**update, "seed": seed}) for seed in seeds]
    workers = workers or get_settings().worker_count
    workers = max(1, min(workers, len(scenarios)))
    logger.info("Batch of %d runs on %d worker(s)", len(scenarios), workers)
    task = partial(_run_lean, keep_records=keep_records)
    if workers == 1:
        return [task(item) for item in scenarios]
    with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker) as pool:
        return list(pool.map(task, scenarios))


def pair_events(
    seed: int, terra_events: Sequence[EventOutcome], baseline_events: Sequence[EventOutcome]
) -> tuple[list[PairedEvent], list[str]]:
    """Match crossings by track and flag every one where Terra lost a larger share of packets."""
    base_events = {event.track_index: event for event in baseline_events}
    pairs: list[PairedEvent] = []
    violations: list[str] = []
    for event in terra_events:
        base = base_events.get(event.track_index)
        pair = PairedEvent(
            seed=seed,
            track_index=event.track_index,
            occlusion_start_ms=event.occlusion_start_ms,
            terra_per=event.per,
            baseline_per=base.per if base is not None else None,
            baseline_outage_ms=base.outage_ms if base is not None else 0,
        )
        pairs.append(pair)
        # an event without data ticks on either side has no PER to compare
        if pair.terra_per is None or pair.baseline_per is None:
            continue
        if pair.terra_per > pair.baseline_per:
            violations.append(
                f"seed {seed} event {event.track_index}: Terra PER {pair.terra_per:.3f} "
                f"exceeds baseline {pair.baseline_per:.3f}"
            )
    return pairs, violations


def compare(scenario: ScenarioConfig, seeds: Sequence[int], workers: int | None = None) -> Comparison:
    """Paired Terra and baseline runs over identical seeds and channels."""
    if not seeds:
        raise ScenarioError("compare needs at least one seed")
    with run_span("simulation.compare", scenario=scenario.name, runs=len(seeds)):
        terra = run_batch(scenario, seeds, ProtocolSelector.TERRA, workers)
        baseline = run_batch(scenario, seeds, ProtocolSelector.BASELINE, workers)

    comparison = Comparison(seeds=list(seeds), terra=terra, baseline=baseline)
    for seed, t_run, b_run in zip(seeds, terra, baseline):
        if t_run.summary.total_outage_ms > b_run.summary.total_outage_ms:
            comparison.violations.append(
                f"seed {seed}: Terra outage {t_run.summary.total_outage_ms} ms exceeds "
                f"baseline {b_run.summary.total_outage_ms} ms"
            )
        pairs, violations = pair_events(seed, t_run.events, b_run.events)
        comparison.paired_events.extend(pairs)
        comparison.violations.extend(violations)
    for violation in comparison.violations:
        logger.warning("Paired comparison violation: %s", violation)
    return comparison


def _run_lean(scenario: ScenarioConfig, keep_records: bool = False) -> RunResult:
    result = run(scenario)
    # the per-beam matrix is only needed for trace export
    result.rss_matrix = None
    if not keep_records:
        result.records = []
        result.tracks = []
    return result


def _init_worker() -> None:
    configure_logging(get_settings())
