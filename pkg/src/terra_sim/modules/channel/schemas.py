"""Radio and surface configuration."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .models import SurfaceKind


class RadioConfig(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    tx_power_dbm: float = 20.0
    carrier_hz: float = Field(default=60e9, gt=0)
    noise_floor_dbm: float = -70.0
    # 15 dB is the literature figure; 45 dB pushes a blocked LoS below the floor
    blockage_loss_db: float = Field(default=45.0, gt=0)
    residual_ground_block_loss_db: float = Field(default=0.0, ge=0)
    snr_data_db: float = Field(default=10.0, ge=0)
    snr_ctrl_db: float = Field(default=3.0, ge=0)

    @property
    def data_threshold_dbm(self) -> float:
        return self.noise_floor_dbm + self.snr_data_db

    @property
    def ctrl_threshold_dbm(self) -> float:
        return self.noise_floor_dbm + self.snr_ctrl_db


class CalibrationGridConfig(BaseModel):
    """Geometries over which the surface loss is fitted."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    h_t_m: float = Field(default=2.5, gt=0)
    h_r_m: float = Field(default=1.0, gt=0)
    distances_m: list[float] = Field(default_factory=lambda: [5.0, 10.0, 15.0, 20.0, 25.0])

    @model_validator(mode="after")
    def _check_distances(self) -> "CalibrationGridConfig":
        if not self.distances_m:
            raise ValueError("calibration grid needs at least one distance")
        if any(d <= 0 for d in self.distances_m):
            raise ValueError("calibration distances must be positive")
        return self


class SurfaceConfig(BaseModel):
    """Reflecting surface.

    Concrete and gravel are fitted to their measured median additional loss
    unless reflection_loss_db is given. Ceramic tile and custom surfaces need
    either an explicit loss or a target.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: SurfaceKind = SurfaceKind.CONCRETE
    reflection_loss_db: float | None = Field(default=None, ge=0)
    target_additional_loss_db: float | None = Field(default=None, gt=0)
    calibration: CalibrationGridConfig = Field(default_factory=CalibrationGridConfig)

    @model_validator(mode="after")
    def _check_resolvable(self) -> "SurfaceConfig":
        if self.kind in (SurfaceKind.CERAMIC_TILE, SurfaceKind.CUSTOM):
            if self.reflection_loss_db is None and self.target_additional_loss_db is None:
                raise ValueError(f"surface '{self.kind.value}' needs reflection_loss_db or target_additional_loss_db")
        return self
