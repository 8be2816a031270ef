"""Discrete-time simulation loop binding channel, blockage and protocol."""

from __future__ import annotations

import logging
from typing import Callable, Sequence

import numpy as np

from ...common.context import run_context
from ...core.errors import InvariantViolation
from ...core.tracing import run_span
from ..blockage.models import PedestrianTrack
from ..blockage.service import generate_tracks, occlusion_interval, scripted_tracks, straddle_interval
from ..channel.calibration import resolve_surface
from ..channel.link import LinkChannel
from ..channel.schemas import RadioConfig
from ..codebook.service import build_codebook
from ..geometry.models import LinkGeometry
from ..geometry.service import direct_path, ground_reflected_path
from ..protocol.baseline import baseline_step
from ..protocol.models import Action, Activity, BeamCache, ProtocolState
from ..protocol.ports import MeasurementPort, RssMatrixPort
from ..protocol.schemas import ProtocolConfig, ProtocolSelector
from ..protocol.terra import initial_state, terra_step
from .metrics import EventWindow, event_outcomes, summarize, verify_summary
from .models import RunResult, TickRecord
from .packets import PacketKind, packet_outcome
from .schemas import ScenarioConfig

logger = logging.getLogger(__name__)

# (time index, activity beam, current LoS beam, nominal LoS rss) -> channel fields of the record
Annotator = Callable[[int, int | None, int | None, float | None], tuple]


def run(scenario: ScenarioConfig) -> RunResult:
    """Simulate one scenario; deterministic for a given configuration and seed."""
    with run_context(scenario.name, scenario.seed), run_span(
        "simulation.run", scenario=scenario.name, seed=scenario.seed, protocol=scenario.protocol.value
    ):
        geom = scenario.geometry.to_link_geometry()
        codebook = build_codebook(scenario.codebook)
        surface = resolve_surface(scenario.surface, scenario.radio)
        channel = LinkChannel(scenario.radio, geom, surface, codebook)
        tracks = generate_tracks(scenario.blockage, scenario.duration_ms, scenario.seed)
        tracks += scripted_tracks(scenario.tracks, scenario.blockage.pedestrian)
        tracks.sort(key=lambda track: track.start_time_ms)
        logger.info(
            "Running %s for %d ms with %d pedestrian crossings", scenario.protocol.value, scenario.duration_ms, len(tracks)
        )

        codes, los_blocked, ground_blocked = _conditions(tracks, geom, scenario.tick_ms, scenario.tick_count)
        tables = {int(code): channel.condition_table(_decode(int(code))) for code in np.unique(codes)}
        rss_matrix = np.empty((scenario.tick_count, len(codebook)), dtype=float)
        for code, table in tables.items():
            rss_matrix[codes == code] = table[0]

        def annotate(index: int, beam_id: int | None, _los_beam: int | None, _nominal: float | None) -> tuple:
            if beam_id is None:
                channel_fields: tuple = (None, None, None)
            else:
                table = tables[int(codes[index])]
                channel_fields = (float(table[1, beam_id]), float(table[2, beam_id]), float(table[3, beam_id]))
            return (*channel_fields, bool(los_blocked[index]), bool(ground_blocked[index]))

        port = RssMatrixPort(
            rss_matrix,
            codebook,
            scenario.tick_ms,
            scenario.radio.noise_floor_dbm,
            scenario.radio.ctrl_threshold_dbm,
            pose=geom if scenario.protocol_config.pose_available else None,
        )
        records, actions = drive_protocol(
            port, scenario.protocol, scenario.protocol_config, scenario.radio, scenario.tick_count, annotate
        )
        windows = event_windows(tracks, geom, scenario.tick_ms, scenario.duration_ms)
        result = finish_run(scenario, records, actions, windows, surface.reflection_loss_db)
        result.tracks = tracks
        result.rss_matrix = rss_matrix
        return result


def drive_protocol(
    port: MeasurementPort,
    selector: ProtocolSelector,
    config: ProtocolConfig,
    radio: RadioConfig,
    tick_count: int,
    annotate: Annotator,
    start_ms: int = 0,
) -> tuple[list[TickRecord], list[Action]]:
    """Advance the selected protocol tick by tick against a port."""
    state: ProtocolState = initial_state(start_ms)
    cache = BeamCache()
    records: list[TickRecord] = []
    actions: list[Action] = []
    tick_ms = port.tick_ms

    for index in range(tick_count):
        time_ms = start_ms + index * tick_ms
        port.begin_tick(time_ms)
        before = state
        los_beam = cache.los_beam_id if selector is ProtocolSelector.TERRA else state.serving_beam_id
        if selector is ProtocolSelector.TERRA:
            state, cache, tick_actions = terra_step(state, cache, config, port, time_ms)
        else:
            state, tick_actions = baseline_step(state, config, port, time_ms)
        actions.extend(tick_actions)

        activity = port.activity
        if activity is None:
            raise InvariantViolation(f"Protocol left tick {time_ms} ms without an activity")
        beam_id = port.beam_id
        rss = port.last_rss_dbm
        combined, los, ground, los_blocked, ground_blocked = annotate(index, beam_id, los_beam, before.nominal_rss_dbm)
        records.append(
            TickRecord(
                time_ms=time_ms,
                state=before.label,
                activity=activity,
                serving_beam_id=beam_id,
                serving_rss_dbm=rss,
                combined_rss_dbm=combined,
                los_rss_dbm=los,
                ground_rss_dbm=ground,
                los_blocked=los_blocked,
                ground_blocked=ground_blocked,
                data_pkt_ok=packet_outcome(rss, radio, PacketKind.DATA) if activity is Activity.DATA else None,
                ctrl_ok=activity is not Activity.IDLE and packet_outcome(rss, radio, PacketKind.CONTROL),
                nominal_los_rss_dbm=before.nominal_rss_dbm,
            )
        )
    return records, actions


def event_windows(
    tracks: Sequence[PedestrianTrack], geom: LinkGeometry, tick_ms: int, duration_ms: int
) -> list[EventWindow]:
    """LoS occlusion interval of every crossing that starts inside the run."""
    direct = direct_path(geom)
    windows = []
    for index, track in enumerate(tracks):
        interval = occlusion_interval(track, geom, direct, tick_ms)
        if interval is None or interval[0] >= duration_ms:
            continue
        windows.append((index, interval[0], min(interval[1], duration_ms)))
    return windows


def finish_run(
    scenario: ScenarioConfig,
    records: list[TickRecord],
    actions: list[Action],
    windows: Sequence[EventWindow],
    reflection_loss_db: float | None,
) -> RunResult:
    events = event_outcomes(records, windows, scenario.radio, scenario.tick_ms)
    summary = summarize(records, events, actions, scenario.radio, scenario.tick_ms, reflection_loss_db)
    verify_summary(records, windows, events, actions, summary, scenario.radio, scenario.tick_ms)
    logger.info(
        "Run finished: %d events, outside outage %.3f, within 6 dB %.3f, mean event PER %s",
        summary.event_count,
        summary.outage_fraction,
        summary.within6db_fraction,
        "n/a" if summary.mean_event_per is None else f"{summary.mean_event_per:.3f}",
    )
    return RunResult(scenario=scenario, records=records, summary=summary, events=events, actions=actions)


def _conditions(
    tracks: Sequence[PedestrianTrack], geom: LinkGeometry, tick_ms: int, tick_count: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    direct = direct_path(geom)
    ground = ground_reflected_path(geom)
    los_blocked = np.zeros(tick_count, dtype=bool)
    ground_blocked = np.zeros(tick_count, dtype=bool)
    straddled = np.zeros(tick_count, dtype=bool)
    for track in tracks:
        for mask, interval in (
            (los_blocked, occlusion_interval(track, geom, direct, tick_ms)),
            (ground_blocked, occlusion_interval(track, geom, ground, tick_ms)),
            (straddled, straddle_interval(track, geom, ground, tick_ms)),
        ):
            if interval is not None:
                mask[interval[0] // tick_ms : interval[1] // tick_ms] = True
    straddled &= ~ground_blocked
    codes = los_blocked.astype(np.int8) * 4 + ground_blocked.astype(np.int8) * 2 + straddled.astype(np.int8)
    return codes, los_blocked, ground_blocked


def _decode(code: int) -> tuple[bool, bool, bool]:
    return bool(code & 4), bool(code & 2), bool(code & 1)

