"""Trace format, export of simulated runs, and replay through the protocol."""

from __future__ import annotations

import csv
import io
import logging
import math

import numpy as np

from ...common.context import run_context
from ...core.errors import ScenarioError
from ...core.tracing import run_span
from ..codebook.service import build_codebook
from ..engine.metrics import EventWindow
from ..engine.models import RunResult
from ..engine.schemas import ScenarioConfig
from ..engine.service import drive_protocol, finish_run
from ..protocol.ports import RssMatrixPort
from .errors import TraceParseError
from .models import RssTrace

logger = logging.getLogger(__name__)

BELOW_FLOOR = "-inf"


def parse_trace(text: str) -> RssTrace:
    """Parse ``time_ms,rss_b0,...`` text; errors name the offending line."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise TraceParseError("trace is empty", line=1)
    header = [cell.strip() for cell in rows[0]]
    expected = ["time_ms"] + [f"rss_b{i}" for i in range(len(header) - 1)]
    if len(header) < 2 or header != expected:
        raise TraceParseError("header must be time_ms,rss_b0,...,rss_b{N-1}", line=1)

    times: list[int] = []
    values: list[list[float]] = []
    for line_no, row in enumerate(rows[1:], start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(header):
            raise TraceParseError(f"expected {len(header)} columns, found {len(row)}", line=line_no)
        time_ms = _parse_time(row[0], line_no)
        if times and time_ms <= times[-1]:
            raise TraceParseError(f"time {time_ms} does not increase (previous {times[-1]})", line=line_no)
        if len(times) >= 2 and time_ms - times[-1] != times[1] - times[0]:
            raise TraceParseError(
                f"tick of {time_ms - times[-1]} ms differs from {times[1] - times[0]} ms", line=line_no
            )
        times.append(time_ms)
        values.append([_parse_rss(cell, line_no) for cell in row[1:]])

    if not times:
        raise TraceParseError("trace has no rows", line=2)
    tick_ms = times[1] - times[0] if len(times) > 1 else 1
    return RssTrace(
        tick_ms=tick_ms,
        times_ms=np.asarray(times, dtype=np.int64),
        rss=np.asarray(values, dtype=float),
    )


def export_trace(rss_matrix: np.ndarray, tick_ms: int, start_ms: int = 0) -> str:
    """Render a ticks x beams matrix in the replay format (shortest round-trip floats)."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["time_ms"] + [f"rss_b{i}" for i in range(rss_matrix.shape[1])])
    for index, row in enumerate(rss_matrix):
        writer.writerow([start_ms + index * tick_ms] + [repr(float(v)) for v in row])
    return out.getvalue()


def replay(trace: RssTrace, scenario: ScenarioConfig) -> RunResult:
    """Drive the scenario's protocol against recorded per-beam RSS."""
    codebook = build_codebook(scenario.codebook)
    if trace.beam_count != len(codebook):
        raise ScenarioError(f"Trace has {trace.beam_count} beam columns, codebook has {len(codebook)} beams")
    if trace.tick_ms != scenario.tick_ms:
        scenario = scenario.model_copy(update={"tick_ms": trace.tick_ms, "duration_ms": trace.tick_ms * len(trace)})
    else:
        scenario = scenario.model_copy(update={"duration_ms": trace.tick_ms * len(trace)})

    with run_context(scenario.name, scenario.seed), run_span(
        "simulation.replay", scenario=scenario.name, protocol=scenario.protocol.value, ticks=len(trace)
    ):
        pose = scenario.geometry.to_link_geometry() if scenario.protocol_config.pose_available else None
        port = RssMatrixPort(
            trace.rss,
            codebook,
            trace.tick_ms,
            scenario.radio.noise_floor_dbm,
            scenario.radio.ctrl_threshold_dbm,
            pose=pose,
            start_ms=trace.start_ms,
        )
        drop_db = scenario.protocol_config.blockage_detect_drop_db
        los_blocked = np.zeros(len(trace), dtype=bool)

        def annotate(index: int, _beam: int | None, los_beam: int | None, nominal: float | None) -> tuple:
            # no ground truth in a trace: LoS counts as blocked while it sits a detector drop below nominal
            blocked = los_beam is not None and nominal is not None and trace.rss[index, los_beam] < nominal - drop_db
            los_blocked[index] = blocked
            return None, None, None, bool(blocked), None

        records, actions = drive_protocol(
            port,
            scenario.protocol,
            scenario.protocol_config,
            scenario.radio,
            len(trace),
            annotate,
            start_ms=trace.start_ms,
        )
        windows = _blocked_windows(los_blocked, trace.start_ms, trace.tick_ms)
        logger.info("Replayed %d ticks with %d LoS dips", len(trace), len(windows))
        result = finish_run(scenario, records, actions, windows, None)
        result.rss_matrix = trace.rss
        return result


def _blocked_windows(mask: np.ndarray, start_ms: int, tick_ms: int) -> list[EventWindow]:
    windows: list[EventWindow] = []
    padded = np.concatenate(([False], mask, [False]))
    edges = np.flatnonzero(np.diff(padded.astype(np.int8)))
    for index, (begin, end) in enumerate(zip(edges[::2], edges[1::2])):
        windows.append((index, start_ms + int(begin) * tick_ms, start_ms + int(end) * tick_ms))
    return windows


def _parse_time(cell: str, line_no: int) -> int:
    try:
        value = float(cell)
    except ValueError:
        raise TraceParseError(f"time '{cell.strip()}' is not a number", line=line_no) from None
    if not math.isfinite(value) or value != int(value):
        raise TraceParseError(f"time '{cell.strip()}' is not a whole number of ms", line=line_no)
    return int(value)


def _parse_rss(cell: str, line_no: int) -> float:
    text = cell.strip()
    if text == BELOW_FLOOR:
        return -math.inf
    try:
        value = float(text)
    except ValueError:
        raise TraceParseError(f"RSS '{text}' is not a number", line=line_no) from None
    if not math.isfinite(value):
        raise TraceParseError(f"RSS '{text}' is not allowed; only '{BELOW_FLOOR}' may be non-finite", line=line_no)
    return value
