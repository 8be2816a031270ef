"""Value types for link geometry: endpoints, ray paths and blocker slabs.

The ground plane is z = 0. All lengths are in meters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import GeometryError

Vector3 = tuple[float, float, float]
Vector2 = tuple[float, float]


class PathKind(str, Enum):
    """Propagation paths between transmitter and receiver."""

    DIRECT = "direct"
    GROUND_REFLECTED = "ground_reflected"


@dataclass(frozen=True, slots=True)
class LinkGeometry:
    """Transmitter and receiver positions above a flat ground plane.

    Attributes:
        tx_pos: Transmitter array position (x, y, z)
        rx_pos: Receiver array position (x, y, z)
        tx_heading_deg: Global bearing of the transmitter array boresight
            (None = facing the receiver)
        rx_heading_deg: Global bearing of the receiver array boresight
            (None = facing the transmitter)
    """

    tx_pos: Vector3
    rx_pos: Vector3
    tx_heading_deg: float | None = None
    rx_heading_deg: float | None = None

    def __post_init__(self) -> None:
        if any(not math.isfinite(v) for v in (*self.tx_pos, *self.rx_pos)):
            raise GeometryError("Link endpoints must be finite")
        if self.h_t <= 0:
            raise GeometryError(f"Transmitter height must be positive, got {self.h_t}")
        if self.h_r <= 0:
            raise GeometryError(f"Receiver height must be positive, got {self.h_r}")
        if self.d_tr <= 0:
            raise GeometryError("Transmitter and receiver must be horizontally separated")

    @classmethod
    def from_heights(cls, h_t: float, h_r: float, d_tr: float) -> "LinkGeometry":
        """Place the transmitter at the origin and the receiver d_tr meters along +x."""
        return cls(tx_pos=(0.0, 0.0, float(h_t)), rx_pos=(float(d_tr), 0.0, float(h_r)))

    @property
    def h_t(self) -> float:
        return self.tx_pos[2]

    @property
    def h_r(self) -> float:
        return self.rx_pos[2]

    @property
    def d_tr(self) -> float:
        return math.hypot(self.rx_pos[0] - self.tx_pos[0], self.rx_pos[1] - self.tx_pos[1])

    @property
    def link_unit_xy(self) -> Vector2:
        """Horizontal unit vector pointing from the receiver toward the transmitter."""
        d = self.d_tr
        return ((self.tx_pos[0] - self.rx_pos[0]) / d, (self.tx_pos[1] - self.rx_pos[1]) / d)


@dataclass(frozen=True, slots=True)
class RayPath:
    kind: PathKind
    vertices: tuple[Vector3, ...]
    length_m: float


@dataclass(frozen=True, slots=True)
class BlockerSlab:
    """A vertical body occluding rays whose height falls in [h_low_m, h_high_m].

    The footprint is a disc of diameter width_m centred on center_xy; the band
    below h_low_m models the gap between the legs.
    """

    center_xy: Vector2
    width_m: float
    h_low_m: float
    h_high_m: float

    def __post_init__(self) -> None:
        if self.width_m <= 0:
            raise GeometryError(f"Blocker width must be positive, got {self.width_m}")
        if not 0 <= self.h_low_m < self.h_high_m:
            raise GeometryError(
                f"Blocker band must satisfy 0 <= h_low < h_high, got [{self.h_low_m}, {self.h_high_m}]"
            )
