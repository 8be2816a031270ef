"""Outage, margin and packet-error metrics computed from tick records."""

from __future__ import annotations

import math
from dataclasses import asdict
from typing import Iterable, Sequence

import numpy as np

from ...core.errors import InvariantViolation
from ..channel.schemas import RadioConfig
from ..protocol.models import Action, Activity, StateKind
from ..protocol.service import discovery_episodes
from .models import EventOutcome, RunSummary, TickRecord

EventWindow = tuple[int, int, int]  # (track index, occlusion start ms, occlusion end ms)


def is_outage(record: TickRecord, radio: RadioConfig) -> bool:
    return record.serving_rss_dbm < radio.noise_floor_dbm


def blockage_affected(record: TickRecord) -> bool:
    """LoS-occluded ticks plus any reacquisition tail."""
    return record.los_blocked or record.state == StateKind.REACQUISITION.value


def outage_fraction(records: Sequence[TickRecord], radio: RadioConfig, affected_only: bool = True) -> float:
    """Fraction of (blockage-affected) ticks outside outage; 1.0 when there are none."""
    selected = [r for r in records if not affected_only or blockage_affected(r)]
    if not selected:
        return 1.0
    return sum(not is_outage(r, radio) for r in selected) / len(selected)


def within_margin_fraction(
    records: Sequence[TickRecord], margin_db: float = 6.0, affected_only: bool = True
) -> float:
    """Fraction of (blockage-affected) ticks served within margin_db of the nominal LoS level."""
    selected = [r for r in records if not affected_only or blockage_affected(r)]
    if not selected or math.isinf(margin_db):
        return 1.0
    hits = sum(
        r.nominal_los_rss_dbm is not None and r.serving_rss_dbm >= r.nominal_los_rss_dbm - margin_db
        for r in selected
    )
    return hits / len(selected)


def outage_runs(records: Sequence[TickRecord], radio: RadioConfig, tick_ms: int) -> list[tuple[int, int]]:
    """Contiguous below-floor runs as (start_ms, length_ms)."""
    runs: list[tuple[int, int]] = []
    start: int | None = None
    last = 0
    for record in records:
        if is_outage(record, radio):
            if start is None or record.time_ms != last + tick_ms:
                if start is not None:
                    runs.append((start, last + tick_ms - start))
                start = record.time_ms
            last = record.time_ms
        elif start is not None:
            runs.append((start, last + tick_ms - start))
            start = None
    if start is not None:
        runs.append((start, last + tick_ms - start))
    return runs


def event_outcomes(
    records: Sequence[TickRecord], windows: Iterable[EventWindow], radio: RadioConfig, tick_ms: int
) -> list[EventOutcome]:
    if not records:
        return []
    t0 = records[0].time_ms
    n = len(records)
    outcomes = []
    for track_index, start_ms, end_ms in windows:
        i0 = max((start_ms - t0) // tick_ms, 0)
        j = min(max((end_ms - t0) // tick_ms, i0), n)
        # recovery tail: until the protocol is back on the LoS beam
        while j < n and records[j].state != StateKind.LOS_OPERATION.value:
            j += 1
        window = records[i0:j]
        data = [r for r in window if r.activity is Activity.DATA]
        errors = sum(not r.data_pkt_ok for r in data)
        runs = outage_runs(window, radio, tick_ms)
        outcomes.append(
            EventOutcome(
                track_index=track_index,
                occlusion_start_ms=start_ms,
                occlusion_end_ms=end_ms,
                window_end_ms=records[j].time_ms if j < n else records[-1].time_ms + tick_ms,
                data_ticks=len(data),
                data_errors=errors,
                per=errors / len(data) if data else None,
                outage_ms=sum(length for _, length in runs),
                longest_outage_ms=max((length for _, length in runs), default=0),
            )
        )
    return outcomes


def event_per(
    records: Sequence[TickRecord], windows: Iterable[EventWindow], radio: RadioConfig, tick_ms: int
) -> list[float | None]:
    return [outcome.per for outcome in event_outcomes(records, windows, radio, tick_ms)]


def cdf(values: Iterable[float | None]) -> list[tuple[float, float]]:
    """Right-continuous empirical CDF as (value, cumulative fraction) steps."""
    data = np.asarray([v for v in values if v is not None], dtype=float)
    if data.size == 0:
        return []
    points, counts = np.unique(data, return_counts=True)
    fractions = np.cumsum(counts) / data.size
    return [(float(v), float(f)) for v, f in zip(points, fractions)]


def summarize(
    records: Sequence[TickRecord],
    events: Sequence[EventOutcome],
    actions: Sequence[Action],
    radio: RadioConfig,
    tick_ms: int,
    reflection_loss_db: float | None = None,
) -> RunSummary:
    outside = outage_fraction(records, radio)
    pers = [event.per for event in events]
    known = [p for p in pers if p is not None]
    runs = outage_runs(records, radio, tick_ms)
    episodes = discovery_episodes(actions)
    return RunSummary(
        outage_fraction=outside,
        inside_outage_fraction=1.0 - outside,
        within6db_fraction=within_margin_fraction(records, 6.0),
        outside_outage_full=outage_fraction(records, radio, affected_only=False),
        within6db_full=within_margin_fraction(records, 6.0, affected_only=False),
        per_blockage_event_per=pers,
        mean_event_per=float(np.mean(known)) if known else None,
        discovery_costs=[count for _, count in episodes],
        discovery_modes=[mode.value for mode, _ in episodes],
        total_outage_ms=sum(length for _, length in runs),
        longest_outage_ms=max((length for _, length in runs), default=0),
        blockage_affected_ms=sum(blockage_affected(r) for r in records) * tick_ms,
        event_count=len(events),
        reflection_loss_db=reflection_loss_db,
    )


def verify_summary(
    records: Sequence[TickRecord],
    windows: Iterable[EventWindow],
    events: Sequence[EventOutcome],
    actions: Sequence[Action],
    summary: RunSummary,
    radio: RadioConfig,
    tick_ms: int,
) -> None:
    """Recompute events and summary from the records and check one activity per tick."""
    for record in records:
        if (record.activity is Activity.DATA) != (record.data_pkt_ok is not None):
            raise InvariantViolation(f"Tick {record.time_ms} ms: packet outcome does not match activity")
        if record.activity is Activity.IDLE and record.serving_beam_id is not None:
            raise InvariantViolation(f"Tick {record.time_ms} ms: idle tick names a beam")
    recomputed = event_outcomes(records, windows, radio, tick_ms)
    if len(recomputed) != len(events):
        raise InvariantViolation(f"{len(events)} events reported, {len(recomputed)} reproducible from tick records")
    for reference, event in zip(recomputed, events):
        wanted, got = asdict(reference), asdict(event)
        differing = [key for key in wanted if not _same(wanted[key], got[key])]
        if differing:
            raise InvariantViolation(
                f"Event {event.track_index} fields not reproducible from tick records: {', '.join(differing)}"
            )
    expected = asdict(summarize(records, recomputed, actions, radio, tick_ms, summary.reflection_loss_db))
    actual = asdict(summary)
    mismatched = [key for key in expected if not _same(expected[key], actual[key])]
    if mismatched:
        raise InvariantViolation(f"Summary fields not reproducible from tick records: {', '.join(mismatched)}")


def _same(a, b) -> bool:
    if isinstance(a, float) and isinstance(b, float):
        return math.isclose(a, b, rel_tol=1e-12, abs_tol=1e-12)
    if isinstance(a, list) and isinstance(b, list):
        return len(a) == len(b) and all(_same(x, y) for x, y in zip(a, b))
    return a == b
