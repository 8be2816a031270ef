"""Procedures shared by the Terra and baseline state machines."""

from __future__ import annotations

import logging
from dataclasses import replace

from .models import Action, ProtocolState, StateKind
from .ports import MeasurementPort
from .schemas import ProtocolConfig

logger = logging.getLogger(__name__)


def log_action(
    actions: list[Action],
    time_ms: int,
    state: ProtocolState,
    event: str,
    beam_id: int | None = None,
    rss_dbm: float | None = None,
) -> None:
    actions.append(Action(time_ms, state.label, event, beam_id, rss_dbm))
    if event != "measure":
        logger.debug("t=%d %s: %s beam=%s rss=%s", time_ms, state.label, event, beam_id, rss_dbm)


def beam_adaptation_tick(
    state: ProtocolState,
    port: MeasurementPort,
    time_ms: int,
    actions: list[Action],
    eligible: frozenset[int] | None = None,
) -> tuple[ProtocolState, tuple[int, float] | None]:
    """Measure the next beam of an exhaustive sweep.

    Returns the winning (beam id, rss) once the sweep completes. Only beams in
    ``eligible`` can win when it is given. A sweep whose best beam is below
    the noise floor starts over.
    """
    candidates = state.candidates or tuple(beam.id for beam in port.codebook)
    beam_id = candidates[state.cursor]
    rss = port.measure(beam_id)
    log_action(actions, time_ms, state, "measure", beam_id, rss)
    if port.control_ok(rss):
        state = replace(state, last_ctrl_ok_ms=time_ms)

    sweep = state.sweep_rss + (rss,)
    if len(sweep) < len(candidates):
        return replace(state, candidates=candidates, cursor=state.cursor + 1, sweep_rss=sweep), None

    ranked = [i for i in range(len(sweep)) if eligible is None or candidates[i] in eligible]
    best = max(ranked, key=lambda i: (sweep[i], -candidates[i]))
    if sweep[best] < port.noise_floor_dbm:
        log_action(actions, time_ms, state, "ba_restart")
        return replace(state, candidates=candidates, cursor=0, sweep_rss=()), None
    log_action(actions, time_ms, state, "ba_complete", candidates[best], sweep[best])
    return replace(state, candidates=candidates, sweep_rss=sweep), (candidates[best], sweep[best])


def start_beam_adaptation(state: ProtocolState, time_ms: int) -> ProtocolState:
    return ProtocolState(
        kind=StateKind.BEAM_ADAPTATION,
        serving_beam_id=state.serving_beam_id,
        nominal_rss_dbm=state.nominal_rss_dbm,
        last_ctrl_ok_ms=state.last_ctrl_ok_ms,
        last_ba_ms=time_ms,
    )


def sync_lost(state: ProtocolState, config: ProtocolConfig, time_ms: int) -> bool:
    return time_ms - state.last_ctrl_ok_ms >= config.sync_timeout_ms


def start_reacquisition(
    state: ProtocolState, config: ProtocolConfig, time_ms: int, actions: list[Action]
) -> ProtocolState:
    log_action(actions, time_ms, state, "sync_lost", state.serving_beam_id)
    return ProtocolState(
        kind=StateKind.REACQUISITION,
        remaining_ms=float(config.reacquisition_ms),
        serving_beam_id=state.serving_beam_id,
        nominal_rss_dbm=state.nominal_rss_dbm,
        last_ctrl_ok_ms=state.last_ctrl_ok_ms,
        last_ba_ms=state.last_ba_ms,
    )


def reacquisition_tick(
    state: ProtocolState, port: MeasurementPort, time_ms: int, actions: list[Action]
) -> ProtocolState:
    """Idle while re-joining as a new user.

    The countdown only advances on ticks where the base-station broadcast is
    heard on the last serving beam.
    """
    port.idle()
    beam_id = state.serving_beam_id
    heard = beam_id is None or port.beacon_heard(beam_id)
    remaining = state.remaining_ms - (port.tick_ms if heard else 0)
    if remaining > 0:
        return replace(state, remaining_ms=remaining)
    log_action(actions, time_ms, state, "reacquired", beam_id)
    return start_beam_adaptation(replace(state, last_ctrl_ok_ms=time_ms), time_ms + port.tick_ms)
