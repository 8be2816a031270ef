"""Scenario configuration for the beam codebook."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, field_validator


class CodebookConfig(BaseModel):
    """Grid and pattern parameters shared by the transmitter and receiver arrays."""

    model_config = ConfigDict(extra="forbid", frozen=True)

    az_grid_deg: list[float] = Field(default_factory=lambda: [-48.0, -24.0, 0.0, 24.0, 48.0])
    zen_grid_deg: list[float] = Field(default_factory=lambda: [20.0, 0.0, -15.0, -30.0, -45.0])
    peak_gain_dbi: float = 17.0
    bw_az_deg: float = Field(default=18.0, gt=0)
    bw_zen_deg: float = Field(default=60.0, gt=0)
    sidelobe_floor_db: float = Field(default=20.0, gt=0)

    @field_validator("az_grid_deg", "zen_grid_deg")
    @classmethod
    def _grid_not_empty(cls, value: list[float]) -> list[float]:
        if not value:
            raise ValueError("grid must not be empty")
        if len(set(value)) != len(value):
            raise ValueError("grid angles must be distinct")
        return value
