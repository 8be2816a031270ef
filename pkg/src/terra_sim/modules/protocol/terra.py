"""Terra state machine: LoS operation with a cached ground-reflection beam.

Beam adaptation picks the LoS beam; ground-reflection discovery finds a
downtilted beam at the same azimuth and caches it. On a sudden LoS drop the
link switches to the cached beam, probes the LoS beam periodically, and
reverts as soon as the LoS level is back.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Callable

from ..codebook.service import nearest_beam, zenith_neighbors
from ..geometry.service import arrival_angles, ground_reflected_path
from .models import Action, BeamCache, DiscoveryMode, ProtocolState, StateKind
from .ports import MeasurementPort
from .procedures import (
    beam_adaptation_tick,
    log_action,
    reacquisition_tick,
    start_beam_adaptation,
    start_reacquisition,
    sync_lost,
)
from .schemas import ProtocolConfig

TerraResult = tuple[ProtocolState, BeamCache, list[Action]]
_Handler = Callable[[ProtocolState, BeamCache, ProtocolConfig, MeasurementPort, int, list[Action]], tuple[ProtocolState, BeamCache]]


def initial_state(time_ms: int = 0) -> ProtocolState:
    return ProtocolState(kind=StateKind.BEAM_ADAPTATION, last_ctrl_ok_ms=time_ms, last_ba_ms=time_ms)


def terra_step(
    state: ProtocolState,
    cache: BeamCache,
    config: ProtocolConfig,
    port: MeasurementPort,
    time_ms: int,
) -> TerraResult:
    """Advance the machine by one tick; exactly one port activity happens."""
    actions: list[Action] = []
    state, cache = _HANDLERS[state.kind](state, cache, config, port, time_ms, actions)
    return state, cache, actions


def discovery_candidates(mode: DiscoveryMode, cache: BeamCache, port: MeasurementPort) -> tuple[int, ...]:
    """Measurement order for ground-reflection discovery.

    NBS predicts the ground-ray elevation from pose and tries the nearest
    zenith beam at the LoS azimuth, then its nearest zenith neighbor. ES tries
    every zenith beam at the LoS azimuth, then all remaining beams by id.
    """
    codebook = port.codebook
    los_beam = codebook.beam(cache.los_beam_id)
    if mode is DiscoveryMode.NBS and port.pose is not None:
        _, elevation = arrival_angles(port.pose, ground_reflected_path(port.pose))
        first = nearest_beam(codebook, los_beam.azimuth_deg, elevation)
        ordered = [b.id for b in zenith_neighbors(codebook, first, 3) if b.id != los_beam.id]
        return tuple(ordered[:2])
    column = [b.id for b in zenith_neighbors(codebook, los_beam, len(codebook.zen_grid)) if b.id != los_beam.id]
    rest = [b.id for b in codebook if b.id not in column and b.id != los_beam.id]
    return tuple(column + rest)


def _start_discovery(
    state: ProtocolState,
    cache: BeamCache,
    mode: DiscoveryMode,
    resume: StateKind,
    port: MeasurementPort,
    time_ms: int,
    actions: list[Action],
) -> tuple[ProtocolState, BeamCache]:
    if mode is DiscoveryMode.NBS and port.pose is None:
        mode = DiscoveryMode.ES
    discovery = replace(
        state,
        kind=StateKind.GROUND_DISCOVERY,
        mode=mode,
        cursor=0,
        candidates=discovery_candidates(mode, cache, port),
        sweep_rss=(),
        resume=resume,
        drop_count=0,
        drift_since_ms=None,
        next_probe_ms=None,
    )
    log_action(actions, time_ms, discovery, f"{mode.value}_start", cache.los_beam_id)
    return discovery, replace(cache, nlos_beam_id=None, nlos_rss_at_discovery_dbm=None)


def _beam_adaptation(state, cache, config, port, time_ms, actions):
    state, result = beam_adaptation_tick(state, port, time_ms, actions)
    if result is None:
        return state, cache
    beam_id, rss = result
    cache = BeamCache(los_beam_id=beam_id, nominal_los_rss_dbm=rss, last_refresh_ms=time_ms)
    state = replace(state, serving_beam_id=beam_id, nominal_rss_dbm=rss)
    mode = DiscoveryMode.NBS if config.pose_available else DiscoveryMode.ES
    return _start_discovery(state, cache, mode, StateKind.LOS_OPERATION, port, time_ms, actions)


def _ground_discovery(state, cache, config, port, time_ms, actions):
    if sync_lost(state, config, time_ms):
        return _reacquisition(start_reacquisition(state, config, time_ms, actions), cache, config, port, time_ms, actions)
    if not state.candidates:
        # nothing measured yet this tick; hand the tick to the next state
        state, cache = _discovery_exhausted(state, cache, config, port, time_ms, actions)
        return _HANDLERS[state.kind](state, cache, config, port, time_ms, actions)
    beam_id = state.candidates[state.cursor]
    rss = port.measure(beam_id)
    log_action(actions, time_ms, state, "measure", beam_id, rss)
    if port.control_ok(rss):
        state = replace(state, last_ctrl_ok_ms=time_ms)

    # the ground ray arrives at the LoS azimuth; other columns never qualify
    same_azimuth = port.codebook.beam(beam_id).azimuth_deg == port.codebook.beam(cache.los_beam_id).azimuth_deg
    if same_azimuth and rss >= port.noise_floor_dbm + config.discovery_margin_db:
        cache = replace(cache, nlos_beam_id=beam_id, nlos_rss_at_discovery_dbm=rss, last_refresh_ms=time_ms)
        log_action(actions, time_ms, state, "nlos_cached", beam_id, rss)
        if state.resume is StateKind.NLOS_OPERATION:
            return _enter_nlos(state, cache, config, time_ms), cache
        return _enter_los(state, cache), cache

    if state.cursor + 1 < len(state.candidates):
        return replace(state, cursor=state.cursor + 1), cache
    return _discovery_exhausted(state, cache, config, port, time_ms, actions)


def _discovery_exhausted(state, cache, config, port, time_ms, actions):
    if state.mode is DiscoveryMode.NBS:
        log_action(actions, time_ms, state, "nbs_fallback")
        return _start_discovery(state, cache, DiscoveryMode.ES, state.resume, port, time_ms, actions)
    log_action(actions, time_ms, state, "discovery_exhausted")
    return _enter_los(state, cache), cache


def _los_operation(state, cache, config, port, time_ms, actions):
    if sync_lost(state, config, time_ms):
        return _reacquisition(start_reacquisition(state, config, time_ms, actions), cache, config, port, time_ms, actions)
    if config.ba_period_ms and time_ms - state.last_ba_ms >= config.ba_period_ms:
        log_action(actions, time_ms, state, "ba_periodic", cache.los_beam_id)
        return _beam_adaptation(start_beam_adaptation(state, time_ms), cache, config, port, time_ms, actions)

    rss = port.serve(cache.los_beam_id)
    if port.control_ok(rss):
        state = replace(state, last_ctrl_ok_ms=time_ms)
    nominal = cache.nominal_los_rss_dbm

    drops = state.drop_count + 1 if rss < nominal - config.blockage_detect_drop_db else 0
    if drops >= config.detect_consecutive_ticks:
        log_action(actions, time_ms, state, "blockage_detected", cache.los_beam_id, rss)
        if cache.nlos_beam_id is None:
            log_action(actions, time_ms, state, "nlos_missing")
            return _start_discovery(state, cache, DiscoveryMode.ES, StateKind.NLOS_OPERATION, port, time_ms, actions)
        return _enter_nlos(state, cache, config, time_ms), cache

    drift_since = state.drift_since_ms
    if rss < nominal - config.blockage_detect_drop_db / 2:
        drift_since = time_ms if drift_since is None else drift_since
        if time_ms - drift_since >= config.drift_window_ms:
            log_action(actions, time_ms, state, "drift", cache.los_beam_id, rss)
            return start_beam_adaptation(state, time_ms + port.tick_ms), cache
    else:
        drift_since = None
    return replace(state, drop_count=drops, drift_since_ms=drift_since), cache


def _nlos_operation(state, cache, config, port, time_ms, actions):
    if sync_lost(state, config, time_ms):
        return _reacquisition(start_reacquisition(state, config, time_ms, actions), cache, config, port, time_ms, actions)

    if state.next_probe_ms is not None and time_ms >= state.next_probe_ms:
        rss = port.measure(cache.los_beam_id)
        log_action(actions, time_ms, state, "measure", cache.los_beam_id, rss)
        if port.control_ok(rss):
            state = replace(state, last_ctrl_ok_ms=time_ms)
        if rss >= cache.nominal_los_rss_dbm - config.revert_margin_db:
            log_action(actions, time_ms, state, "revert", cache.los_beam_id, rss)
            return _enter_los(state, cache), cache
        return replace(state, next_probe_ms=state.next_probe_ms + config.probe_period_ms), cache

    if cache.nlos_beam_id is None:
        log_action(actions, time_ms, state, "nlos_missing")
        state, cache = _start_discovery(state, cache, DiscoveryMode.ES, StateKind.NLOS_OPERATION, port, time_ms, actions)
        return _ground_discovery(state, cache, config, port, time_ms, actions)

    rss = port.serve(cache.nlos_beam_id)
    if port.control_ok(rss):
        state = replace(state, last_ctrl_ok_ms=time_ms)
    lows = state.drop_count + 1 if rss < port.noise_floor_dbm else 0
    if lows >= config.detect_consecutive_ticks:
        log_action(actions, time_ms, state, "nlos_lost", cache.nlos_beam_id, rss)
        return _start_discovery(state, cache, DiscoveryMode.ES, StateKind.NLOS_OPERATION, port, time_ms, actions)
    return replace(state, drop_count=lows), cache


def _reacquisition(state, cache, config, port, time_ms, actions):
    state = reacquisition_tick(state, port, time_ms, actions)
    if state.kind is StateKind.BEAM_ADAPTATION:
        cache = BeamCache()
    return state, cache


def _enter_los(state: ProtocolState, cache: BeamCache) -> ProtocolState:
    return replace(
        state,
        kind=StateKind.LOS_OPERATION,
        mode=None,
        cursor=0,
        candidates=(),
        resume=None,
        serving_beam_id=cache.los_beam_id,
        nominal_rss_dbm=cache.nominal_los_rss_dbm,
        drop_count=0,
        drift_since_ms=None,
        next_probe_ms=None,
    )


def _enter_nlos(state: ProtocolState, cache: BeamCache, config: ProtocolConfig, time_ms: int) -> ProtocolState:
    return replace(
        state,
        kind=StateKind.NLOS_OPERATION,
        mode=None,
        cursor=0,
        candidates=(),
        resume=None,
        serving_beam_id=cache.nlos_beam_id,
        drop_count=0,
        drift_since_ms=None,
        next_probe_ms=time_ms + config.probe_period_ms,
    )


_HANDLERS: dict[StateKind, _Handler] = {
    StateKind.BEAM_ADAPTATION: _beam_adaptation,
    StateKind.GROUND_DISCOVERY: _ground_discovery,
    StateKind.LOS_OPERATION: _los_operation,
    StateKind.NLOS_OPERATION: _nlos_operation,
    StateKind.REACQUISITION: _reacquisition,
}
