"""Protocol state, beam cache and action log entries."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class StateKind(str, Enum):
    BEAM_ADAPTATION = "beam_adaptation"
    GROUND_DISCOVERY = "ground_reflection_discovery"
    LOS_OPERATION = "los_operation"
    NLOS_OPERATION = "nlos_operation"
    REACQUISITION = "reacquisition"


class DiscoveryMode(str, Enum):
    NBS = "nbs"
    ES = "es"


class Activity(str, Enum):
    """What the radio did during one tick."""

    DATA = "data"
    MEASURE = "measure"
    IDLE = "idle"


@dataclass(frozen=True, slots=True)
class ProtocolState:
    """Immutable state machine snapshot.

    Attributes:
        kind: Current state
        mode: Discovery mode while in ground-reflection discovery
        cursor: Position in candidates (sweep or discovery order)
        candidates: Beam ids still to be measured by the running procedure
        sweep_rss: RSS collected so far by a beam-adaptation sweep
        remaining_ms: Reacquisition time still to elapse
        resume: State entered once discovery finds a beam
        serving_beam_id: Beam used for data, or listened on during reacquisition
        nominal_rss_dbm: LoS reference level from the last sweep
        drop_count: Consecutive samples failing the active detector
        drift_since_ms: Start of the current slow-drift episode
        last_ctrl_ok_ms: Last tick with a successful control reception
        next_probe_ms: Next LoS probe while on the NLoS beam
        last_ba_ms: When the last beam-adaptation sweep started
    """

    kind: StateKind
    mode: DiscoveryMode | None = None
    cursor: int = 0
    candidates: tuple[int, ...] = ()
    sweep_rss: tuple[float, ...] = ()
    remaining_ms: float = 0.0
    resume: StateKind | None = None
    serving_beam_id: int | None = None
    nominal_rss_dbm: float | None = None
    drop_count: int = 0
    drift_since_ms: int | None = None
    last_ctrl_ok_ms: int = 0
    next_probe_ms: int | None = None
    last_ba_ms: int = 0

    @property
    def label(self) -> str:
        if self.kind is StateKind.GROUND_DISCOVERY and self.mode is not None:
            return f"{self.kind.value}:{self.mode.value}"
        return self.kind.value


@dataclass(frozen=True, slots=True)
class BeamCache:
    los_beam_id: int | None = None
    nlos_beam_id: int | None = None
    nominal_los_rss_dbm: float | None = None
    nlos_rss_at_discovery_dbm: float | None = None
    last_refresh_ms: int = 0


@dataclass(frozen=True, slots=True)
class Action:
    time_ms: int
    state: str
    event: str
    beam_id: int | None = None
    rss_dbm: float | None = None
