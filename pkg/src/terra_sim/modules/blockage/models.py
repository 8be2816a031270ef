from __future__ import annotations

from dataclasses import dataclass

from ...core.errors import ScenarioError


@dataclass(frozen=True, slots=True)
class PedestrianTrack:
    """A pedestrian walking perpendicular across the link at constant speed.

    Attributes:
        start_time_ms: When the walk starts, start_offset_m to the side of the link
        crossing_point_m: Where the walk crosses the link, measured from the receiver
        lateral_speed_mps: Walking speed
        body_width_m: Footprint diameter
        height_m: Top of the occluding body
        h_low_m: Bottom of the occluding body (leg gap below)
        start_offset_m: Initial lateral distance from the link line
    """

    start_time_ms: float
    crossing_point_m: float
    lateral_speed_mps: float = 1.4
    body_width_m: float = 0.3
    height_m: float = 1.78
    h_low_m: float = 0.6
    start_offset_m: float = 2.0

    def __post_init__(self) -> None:
        if self.lateral_speed_mps <= 0:
            raise ScenarioError(f"Pedestrian speed must be positive, got {self.lateral_speed_mps}")
        if self.body_width_m <= 0:
            raise ScenarioError(f"Pedestrian width must be positive, got {self.body_width_m}")
        if not self.height_m > self.h_low_m >= 0:
            raise ScenarioError(f"Pedestrian needs height > h_low >= 0, got {self.height_m} and {self.h_low_m}")

    def lateral_offset_m(self, time_ms: float) -> float:
        return self.start_offset_m - self.lateral_speed_mps * (time_ms - self.start_time_ms) / 1000.0

    def time_at_offset_ms(self, lateral_m: float) -> float:
        return self.start_time_ms + 1000.0 * (self.start_offset_m - lateral_m) / self.lateral_speed_mps

    @property
    def end_time_ms(self) -> float:
        return self.time_at_offset_ms(-self.start_offset_m)
