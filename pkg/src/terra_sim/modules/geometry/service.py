"""Link geometry: direct and ground-reflected rays, angles, and blocker occlusion.

The ground-reflected ray is built with the image method: mirroring the
transmitter below z = 0 turns the reflected ray into a straight line whose
crossing with the ground plane is the specular point.
"""

from __future__ import annotations

import math

import numpy as np

from .models import BlockerSlab, LinkGeometry, PathKind, RayPath, Vector3


def direct_path(geom: LinkGeometry) -> RayPath:
    tx = np.asarray(geom.tx_pos, dtype=float)
    rx = np.asarray(geom.rx_pos, dtype=float)
    return RayPath(
        kind=PathKind.DIRECT,
        vertices=(geom.tx_pos, geom.rx_pos),
        length_m=float(np.linalg.norm(rx - tx)),
    )


def ground_reflected_path(geom: LinkGeometry) -> RayPath:
    tx = np.asarray(geom.tx_pos, dtype=float)
    rx = np.asarray(geom.rx_pos, dtype=float)
    # The image ray crosses z = 0 at fraction H_T / (H_T + H_R) of the horizontal run
    fraction = geom.h_t / (geom.h_t + geom.h_r)
    point = tx + (rx - tx) * fraction
    reflection: Vector3 = (float(point[0]), float(point[1]), 0.0)
    ref = np.asarray(reflection)
    length = float(np.linalg.norm(ref - tx) + np.linalg.norm(rx - ref))
    return RayPath(
        kind=PathKind.GROUND_REFLECTED,
        vertices=(geom.tx_pos, reflection, geom.rx_pos),
        length_m=length,
    )


def path_for(geom: LinkGeometry, kind: PathKind) -> RayPath:
    if kind is PathKind.DIRECT:
        return direct_path(geom)
    return ground_reflected_path(geom)


def arrival_angles(geom: LinkGeometry, path: RayPath) -> tuple[float, float]:
    """Azimuth and elevation (degrees) at which the path reaches the receiver.

    Elevation is measured from the horizontal, negative below the horizon.
    Both supported paths lie in the vertical plane through the two endpoints,
    so they share the link bearing and therefore the same azimuth.
    """
    bearing = _bearing_deg(geom.rx_pos, geom.tx_pos)
    heading = bearing if geom.rx_heading_deg is None else geom.rx_heading_deg
    azimuth = wrap_deg(bearing - heading)
    if path.kind is PathKind.DIRECT:
        elevation = math.degrees(math.atan2(geom.h_t - geom.h_r, geom.d_tr))
    else:
        elevation = -math.degrees(math.atan2(geom.h_t + geom.h_r, geom.d_tr))
    return azimuth, elevation


def departure_angles(geom: LinkGeometry, path: RayPath) -> tuple[float, float]:
    """Azimuth and elevation (degrees) at which the path leaves the transmitter."""
    bearing = _bearing_deg(geom.tx_pos, geom.rx_pos)
    heading = bearing if geom.tx_heading_deg is None else geom.tx_heading_deg
    azimuth = wrap_deg(bearing - heading)
    if path.kind is PathKind.DIRECT:
        elevation = math.degrees(math.atan2(geom.h_r - geom.h_t, geom.d_tr))
    else:
        elevation = -math.degrees(math.atan2(geom.h_t + geom.h_r, geom.d_tr))
    return azimuth, elevation


def path_blocked(path: RayPath, blocker: BlockerSlab) -> bool:
    """True when some segment passes through the blocker footprint inside its height band."""
    for z_min, z_max in _heights_inside_footprint(path, blocker):
        if z_max >= blocker.h_low_m and z_min <= blocker.h_high_m:
            return True
    return False


def path_straddled(path: RayPath, blocker: BlockerSlab) -> bool:
    """True when the path crosses the footprint only below h_low (through the leg gap)."""
    spans = _heights_inside_footprint(path, blocker)
    if not spans:
        return False
    if path_blocked(path, blocker):
        return False
    return all(z_max < blocker.h_low_m for _, z_max in spans)


def los_occlusion_reach(geom: LinkGeometry, h_high_m: float, h_low_m: float = 0.0) -> tuple[float, float] | None:
    """Distances from the receiver, along the link, where a body can cut the direct ray.

    Returns the (near, far) range in meters, or None when the direct ray never
    passes through the [h_low_m, h_high_m] band.
    """
    slope = (geom.h_t - geom.h_r) / geom.d_tr
    if slope == 0:
        if h_low_m <= geom.h_r <= h_high_m:
            return 0.0, geom.d_tr
        return None
    # h(d) = H_R + slope * d
    d_a = (h_low_m - geom.h_r) / slope
    d_b = (h_high_m - geom.h_r) / slope
    near = max(0.0, min(d_a, d_b))
    far = min(geom.d_tr, max(d_a, d_b))
    if near > far:
        return None
    return near, far


def wrap_deg(angle: float) -> float:
    wrapped = (angle + 180.0) % 360.0 - 180.0
    if wrapped == -180.0 and angle > 0:
        return 180.0
    return wrapped


def _bearing_deg(origin: Vector3, target: Vector3) -> float:
    return math.degrees(math.atan2(target[1] - origin[1], target[0] - origin[0]))


def _heights_inside_footprint(path: RayPath, blocker: BlockerSlab) -> list[tuple[float, float]]:
    radius = blocker.width_m / 2.0
    cx, cy = blocker.center_xy
    spans: list[tuple[float, float]] = []
    for p0, p1 in zip(path.vertices, path.vertices[1:]):
        interval = _footprint_interval(p0, p1, cx, cy, radius)
        if interval is None:
            continue
        s_lo, s_hi = interval
        z_lo = p0[2] + (p1[2] - p0[2]) * s_lo
        z_hi = p0[2] + (p1[2] - p0[2]) * s_hi
        spans.append((min(z_lo, z_hi), max(z_lo, z_hi)))
    return spans


def _footprint_interval(p0: Vector3, p1: Vector3, cx: float, cy: float, radius: float) -> tuple[float, float] | None:
    ax, ay = p0[0] - cx, p0[1] - cy
    bx, by = p1[0] - p0[0], p1[1] - p0[1]
    a = bx * bx + by * by
    c = ax * ax + ay * ay - radius * radius
    if a == 0.0:
        return (0.0, 1.0) if c <= 0 else None
    b = 2.0 * (ax * bx + ay * by)
    disc = b * b - 4.0 * a * c
    if disc < 0:
        return None
    root = math.sqrt(disc)
    s_lo = max((-b - root) / (2.0 * a), 0.0)
    s_hi = min((-b + root) / (2.0 * a), 1.0)
    if s_lo > s_hi:
        return None
    return s_lo, s_hi
