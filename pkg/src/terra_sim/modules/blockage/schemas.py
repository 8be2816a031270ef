from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, model_validator


class PedestrianConfig(BaseModel):
    """Body and walk parameters shared by generated pedestrians."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    lateral_speed_mps: float = Field(default=1.4, gt=0)
    body_width_m: float = Field(default=0.3, gt=0)
    height_m: float = Field(default=1.78, gt=0)
    h_low_m: float = Field(default=0.6, ge=0)
    start_offset_m: float = Field(default=2.0, gt=0)

    @model_validator(mode="after")
    def _check_band(self) -> "PedestrianConfig":
        if self.height_m <= self.h_low_m:
            raise ValueError("height_m must exceed h_low_m")
        return self


class BlockageProcess(BaseModel):
    """Poisson stream of pedestrians crossing near the receiver."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    arrival_rate_per_s: float = Field(default=0.5, ge=0)
    crossing_point_range_m: tuple[float, float] = (0.5, 3.0)
    # None -> derived from the scenario seed
    rng_seed: int | None = None
    pedestrian: PedestrianConfig = Field(default_factory=PedestrianConfig)

    @model_validator(mode="after")
    def _check_range(self) -> "BlockageProcess":
        low, high = self.crossing_point_range_m
        if not 0 < low <= high:
            raise ValueError("crossing_point_range_m must satisfy 0 < low <= high")
        return self


class TrackConfig(BaseModel):
    """An explicitly scripted crossing; unset body fields use the process pedestrian."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    start_time_ms: float = Field(ge=0)
    crossing_point_m: float = Field(gt=0)
    lateral_speed_mps: float | None = Field(default=None, gt=0)
    body_width_m: float | None = Field(default=None, gt=0)
    height_m: float | None = Field(default=None, gt=0)
    h_low_m: float | None = Field(default=None, ge=0)
    start_offset_m: float | None = Field(default=None, gt=0)
