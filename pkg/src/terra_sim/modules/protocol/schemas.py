from __future__ import annotations

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator


class ProtocolSelector(str, Enum):
    TERRA = "terra"
    BASELINE = "baseline"


class ProtocolConfig(BaseModel):
    """Timers and thresholds of the beam-management state machines."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    blockage_detect_drop_db: float = Field(default=10.0, gt=0)
    detect_consecutive_ticks: int = Field(default=3, ge=1)
    probe_period_ms: int = Field(default=20, gt=0)
    revert_margin_db: float = Field(default=6.0, gt=0)
    sync_timeout_ms: int = Field(default=100, gt=0)
    # 64 directions every 20 ms
    reacq_sweep_ms: int = Field(default=1280, gt=0)
    reacq_initial_access_ms: int = Field(default=50, gt=0)
    pose_available: bool = True
    discovery_margin_db: float = Field(default=10.0, ge=0)
    drift_window_ms: int = Field(default=200, gt=0)
    # 0 disables periodic re-adaptation
    ba_period_ms: int = Field(default=0, ge=0)

    @model_validator(mode="after")
    def _check_margins(self) -> "ProtocolConfig":
        if self.revert_margin_db >= self.blockage_detect_drop_db:
            raise ValueError("revert_margin_db must be smaller than blockage_detect_drop_db")
        return self

    @property
    def reacquisition_ms(self) -> int:
        return self.reacq_sweep_ms + self.reacq_initial_access_ms
