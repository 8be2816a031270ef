"""Reference behavior without ground-reflection fallback.

The link stays on its LoS beam through blockages; once control reception
has failed for the sync timeout it re-joins as a new user. Its sweep never
adopts a downtilted beam, so a re-join that overlaps a crossing waits for
the direct ray instead of settling on the ground reflection.
"""

from __future__ import annotations

from dataclasses import replace
from functools import lru_cache

from ..codebook.models import Codebook
from .models import Action, ProtocolState, StateKind
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


def baseline_step(
    state: ProtocolState, config: ProtocolConfig, port: MeasurementPort, time_ms: int
) -> tuple[ProtocolState, list[Action]]:
    actions: list[Action] = []

    if state.kind is StateKind.REACQUISITION:
        return reacquisition_tick(state, port, time_ms, actions), actions

    if state.kind is StateKind.LOS_OPERATION:
        if sync_lost(state, config, time_ms):
            state = start_reacquisition(state, config, time_ms, actions)
            return reacquisition_tick(state, port, time_ms, actions), actions
        if config.ba_period_ms and time_ms - state.last_ba_ms >= config.ba_period_ms:
            log_action(actions, time_ms, state, "ba_periodic", state.serving_beam_id)
            state = start_beam_adaptation(state, time_ms)
        else:
            rss = port.serve(state.serving_beam_id)
            if port.control_ok(rss):
                state = replace(state, last_ctrl_ok_ms=time_ms)
            return state, actions

    state, result = beam_adaptation_tick(state, port, time_ms, actions, horizon_beams(port.codebook))
    if result is not None:
        beam_id, rss = result
        state = ProtocolState(
            kind=StateKind.LOS_OPERATION,
            serving_beam_id=beam_id,
            nominal_rss_dbm=rss,
            last_ctrl_ok_ms=state.last_ctrl_ok_ms,
            last_ba_ms=state.last_ba_ms,
        )
    return state, actions


@lru_cache(maxsize=8)
def horizon_beams(codebook: Codebook) -> frozenset[int]:
    """Beams pointing at or above the horizon; the whole codebook if none do."""
    level = frozenset(beam.id for beam in codebook if beam.zenith_deg >= 0.0)
    return level or frozenset(beam.id for beam in codebook)
