"""Channel value types: reflecting surfaces and per-beam observations."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..geometry.models import PathKind
from .errors import ChannelError


class SurfaceKind(str, Enum):
    CONCRETE = "concrete"
    GRAVEL = "gravel"
    CERAMIC_TILE = "ceramic_tile"
    CUSTOM = "custom"


# Median additional loss of the ground path over LoS measured per surface
SURFACE_TARGETS_DB: dict[SurfaceKind, float] = {
    SurfaceKind.CONCRETE: 4.5,
    SurfaceKind.GRAVEL: 4.8,
}


@dataclass(frozen=True, slots=True)
class Surface:
    kind: SurfaceKind
    reflection_loss_db: float

    def __post_init__(self) -> None:
        if not self.reflection_loss_db >= 0:
            raise ChannelError(f"Reflection loss must be >= 0 dB, got {self.reflection_loss_db}")


@dataclass(frozen=True, slots=True)
class ChannelObservation:
    """What the receiver sees on one beam pair during one tick.

    rss_dbm is the non-coherent sum of both rays. tracked_path names the ray
    the receiver beam locks onto; tracked_rss_dbm is that ray's contribution
    and is what the link layer reports for the beam.
    """

    time_ms: int
    tx_beam_id: int
    rx_beam_id: int
    rss_dbm: float
    los_rss_dbm: float
    ground_rss_dbm: float
    los_blocked: bool
    ground_blocked: bool
    tracked_path: PathKind = PathKind.DIRECT

    @property
    def tracked_rss_dbm(self) -> float:
        if self.tracked_path is PathKind.DIRECT:
            return self.los_rss_dbm
        return self.ground_rss_dbm
