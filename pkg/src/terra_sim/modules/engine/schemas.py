"""Scenario configuration: everything one simulated run depends on."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..blockage.schemas import BlockageProcess, TrackConfig
from ..channel.schemas import RadioConfig, SurfaceConfig
from ..codebook.schemas import CodebookConfig
from ..geometry.models import LinkGeometry
from ..protocol.schemas import ProtocolConfig, ProtocolSelector


class GeometryConfig(BaseModel):
    """Heights above ground and horizontal separation of the two arrays.

    Boresight offsets rotate an array away from facing the other end.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    h_t_m: float = Field(default=2.0, gt=0)
    h_r_m: float = Field(default=1.0, gt=0)
    d_tr_m: float = Field(default=6.0, gt=0)
    tx_boresight_offset_deg: float = 0.0
    rx_boresight_offset_deg: float = 0.0

    def to_link_geometry(self) -> LinkGeometry:
        # tx at the origin facing +x, rx facing back toward -x
        return LinkGeometry(
            tx_pos=(0.0, 0.0, self.h_t_m),
            rx_pos=(self.d_tr_m, 0.0, self.h_r_m),
            tx_heading_deg=self.tx_boresight_offset_deg,
            rx_heading_deg=180.0 + self.rx_boresight_offset_deg,
        )


class ScenarioConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    name: str = "custom"
    geometry: GeometryConfig = Field(default_factory=GeometryConfig)
    surface: SurfaceConfig = Field(default_factory=SurfaceConfig)
    radio: RadioConfig = Field(default_factory=RadioConfig)
    codebook: CodebookConfig = Field(default_factory=CodebookConfig)
    blockage: BlockageProcess = Field(default_factory=BlockageProcess)
    tracks: list[TrackConfig] = Field(default_factory=list)
    protocol: ProtocolSelector = ProtocolSelector.TERRA
    protocol_config: ProtocolConfig = Field(default_factory=ProtocolConfig)
    tick_ms: int = Field(default=1, gt=0)
    duration_ms: int = Field(default=100_000, gt=0)
    seed: int = 0

    @model_validator(mode="after")
    def _check_consistency(self) -> "ScenarioConfig":
        if self.duration_ms % self.tick_ms:
            raise ValueError(f"duration_ms ({self.duration_ms}) must be a multiple of tick_ms ({self.tick_ms})")
        d_tr = self.geometry.d_tr_m
        if self.blockage.crossing_point_range_m[1] >= d_tr:
            raise ValueError(f"blockage.crossing_point_range_m must lie within (0, {d_tr}) m")
        for index, track in enumerate(self.tracks):
            if track.crossing_point_m >= d_tr:
                raise ValueError(f"tracks[{index}].crossing_point_m must be below d_tr_m ({d_tr})")
        return self

    @property
    def tick_count(self) -> int:
        return self.duration_ms // self.tick_ms
