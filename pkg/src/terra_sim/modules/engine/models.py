"""Per-tick records, per-event outcomes and run summaries."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..blockage.models import PedestrianTrack
from ..protocol.models import Action, Activity
from .schemas import ScenarioConfig


@dataclass(frozen=True, slots=True)
class TickRecord:
    """One tick of a run.

    serving_rss_dbm is the RSS on the beam used this tick (the probed beam on
    measurement ticks, -inf while idle). Channel fields are None when unknown,
    as in trace replays.
    """

    time_ms: int
    state: str
    activity: Activity
    serving_beam_id: int | None
    serving_rss_dbm: float
    combined_rss_dbm: float | None
    los_rss_dbm: float | None
    ground_rss_dbm: float | None
    los_blocked: bool
    ground_blocked: bool | None
    data_pkt_ok: bool | None
    ctrl_ok: bool
    nominal_los_rss_dbm: float | None


@dataclass(frozen=True, slots=True)
class EventOutcome:
    """Packet and outage statistics for one LoS-occluding crossing.

    The window runs from occlusion start until the protocol is back in LoS
    operation (at least until occlusion end).
    """

    track_index: int
    occlusion_start_ms: int
    occlusion_end_ms: int
    window_end_ms: int
    data_ticks: int
    data_errors: int
    per: float | None
    outage_ms: int
    longest_outage_ms: int


@dataclass(frozen=True, slots=True)
class RunSummary:
    outage_fraction: float
    inside_outage_fraction: float
    within6db_fraction: float
    outside_outage_full: float
    within6db_full: float
    per_blockage_event_per: list[float | None]
    mean_event_per: float | None
    discovery_costs: list[int]
    discovery_modes: list[str]
    total_outage_ms: int
    longest_outage_ms: int
    blockage_affected_ms: int
    event_count: int
    reflection_loss_db: float | None


@dataclass(slots=True)
class RunResult:
    scenario: ScenarioConfig
    records: list[TickRecord]
    summary: RunSummary
    events: list[EventOutcome]
    actions: list[Action]
    tracks: list[PedestrianTrack] = field(default_factory=list)
    rss_matrix: np.ndarray | None = None

    @property
    def seed(self) -> int:
        return self.scenario.seed
