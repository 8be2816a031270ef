"""Pedestrian crossings: Poisson generation, kinematics and occlusion windows."""

from __future__ import annotations

import math
from typing import Callable, Sequence

import numpy as np

from ..geometry.models import BlockerSlab, LinkGeometry, RayPath
from ..geometry.service import path_blocked, path_straddled
from .models import PedestrianTrack
from .schemas import BlockageProcess, PedestrianConfig, TrackConfig


def generate_tracks(process: BlockageProcess, duration_ms: float, seed: int) -> list[PedestrianTrack]:
    """Poisson arrivals over [0, duration_ms) with crossing points uniform in range."""
    if process.arrival_rate_per_s <= 0 or duration_ms <= 0:
        return []
    rng = np.random.default_rng(process.rng_seed if process.rng_seed is not None else seed)
    mean_gap_ms = 1000.0 / process.arrival_rate_per_s
    low, high = process.crossing_point_range_m
    tracks: list[PedestrianTrack] = []
    t = float(rng.exponential(mean_gap_ms))
    while t < duration_ms:
        tracks.append(_track(process.pedestrian, t, float(rng.uniform(low, high))))
        t += float(rng.exponential(mean_gap_ms))
    return tracks


def scripted_tracks(configs: Sequence[TrackConfig], pedestrian: PedestrianConfig) -> list[PedestrianTrack]:
    tracks = []
    for config in configs:
        overrides = config.model_dump(exclude_none=True, exclude={"start_time_ms", "crossing_point_m"})
        body = pedestrian.model_copy(update=overrides)
        tracks.append(_track(body, config.start_time_ms, config.crossing_point_m))
    return tracks


def blocker_at(track: PedestrianTrack, time_ms: float, geom: LinkGeometry) -> BlockerSlab | None:
    """Blocker position at time_ms, or None before the walk starts and once it has passed."""
    if time_ms < track.start_time_ms:
        return None
    lateral = track.lateral_offset_m(time_ms)
    if lateral < -track.start_offset_m:
        return None
    ux, uy = geom.link_unit_xy
    cx = geom.rx_pos[0] + ux * track.crossing_point_m - uy * lateral
    cy = geom.rx_pos[1] + uy * track.crossing_point_m + ux * lateral
    return BlockerSlab(
        center_xy=(cx, cy),
        width_m=track.body_width_m,
        h_low_m=track.h_low_m,
        h_high_m=track.height_m,
    )


def occlusion_interval(
    track: PedestrianTrack, geom: LinkGeometry, path: RayPath, tick_ms: int
) -> tuple[int, int] | None:
    """Tick-aligned [start_ms, end_ms) during which the track blocks the path."""
    return _tick_interval(track, geom, tick_ms, lambda slab: path_blocked(path, slab))


def straddle_interval(
    track: PedestrianTrack, geom: LinkGeometry, path: RayPath, tick_ms: int
) -> tuple[int, int] | None:
    """Tick-aligned [start_ms, end_ms) during which the path passes under the body."""
    return _tick_interval(track, geom, tick_ms, lambda slab: path_straddled(path, slab))


def _tick_interval(
    track: PedestrianTrack,
    geom: LinkGeometry,
    tick_ms: int,
    hit: Callable[[BlockerSlab], bool],
) -> tuple[int, int] | None:
    # Only the footprint's passage over the link line can touch either ray
    half = track.body_width_m / 2.0
    first = math.floor(track.time_at_offset_ms(half) / tick_ms) * tick_ms
    last = math.ceil(track.time_at_offset_ms(-half) / tick_ms) * tick_ms
    start: int | None = None
    end: int | None = None
    for t in range(max(int(first), 0), int(last) + tick_ms, tick_ms):
        slab = blocker_at(track, t, geom)
        if slab is not None and hit(slab):
            if start is None:
                start = t
            end = t + tick_ms
    if start is None or end is None:
        return None
    return start, end


def _track(pedestrian: PedestrianConfig, start_time_ms: float, crossing_point_m: float) -> PedestrianTrack:
    return PedestrianTrack(
        start_time_ms=start_time_ms,
        crossing_point_m=crossing_point_m,
        lateral_speed_mps=pedestrian.lateral_speed_mps,
        body_width_m=pedestrian.body_width_m,
        height_m=pedestrian.height_m,
        h_low_m=pedestrian.h_low_m,
        start_offset_m=pedestrian.start_offset_m,
    )
