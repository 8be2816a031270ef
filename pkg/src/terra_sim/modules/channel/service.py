"""Link budget at 60 GHz: free-space loss, per-ray RSS and two-ray composition."""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT

from ..codebook.models import Beam
from ..codebook.service import beam_gain
from ..geometry.models import BlockerSlab, LinkGeometry, PathKind, RayPath
from ..geometry.service import (
    arrival_angles,
    departure_angles,
    direct_path,
    ground_reflected_path,
    path_blocked,
    path_straddled,
    wrap_deg,
)
from .errors import ChannelError
from .models import ChannelObservation, Surface
from .schemas import RadioConfig


def fspl_db(distance_m: float, carrier_hz: float) -> float:
    """Friis free-space path loss, 20 log10(4 pi d / lambda)."""
    if not distance_m > 0:
        raise ChannelError(f"Path length must be positive, got {distance_m}")
    wavelength = SPEED_OF_LIGHT / carrier_hz
    return 20.0 * math.log10(4.0 * math.pi * distance_m / wavelength)


def power_sum_dbm(*levels_dbm: float) -> float:
    """Non-coherent sum of powers given in dBm; -inf terms contribute nothing."""
    levels = np.asarray(levels_dbm, dtype=float)
    finite = levels[np.isfinite(levels)]
    if finite.size == 0:
        return -math.inf
    peak = float(finite.max())
    return peak + 10.0 * math.log10(float(np.sum(np.power(10.0, (finite - peak) / 10.0))))


def geometric_excess_db(geom: LinkGeometry, carrier_hz: float = 60e9) -> float:
    """Extra spreading loss of the ground ray over the direct ray."""
    return fspl_db(ground_reflected_path(geom).length_m, carrier_hz) - fspl_db(direct_path(geom).length_m, carrier_hz)


def path_budget_dbm(
    radio: RadioConfig,
    geom: LinkGeometry,
    path: RayPath,
    surface: Surface,
    tx_beam: Beam,
    rx_beam: Beam,
    *,
    blocked: bool = False,
    straddled: bool = False,
) -> float:
    """RSS of one ray for known occlusion flags."""
    tx_az, tx_el = departure_angles(geom, path)
    rx_az, rx_el = arrival_angles(geom, path)
    rss = (
        radio.tx_power_dbm
        + beam_gain(tx_beam, tx_az, tx_el)
        + beam_gain(rx_beam, rx_az, rx_el)
        - fspl_db(path.length_m, radio.carrier_hz)
    )
    if path.kind is PathKind.GROUND_REFLECTED:
        rss -= surface.reflection_loss_db
        if straddled and not blocked:
            rss -= radio.residual_ground_block_loss_db
    if blocked:
        rss -= radio.blockage_loss_db
    return rss


def path_rss(
    radio: RadioConfig,
    geom: LinkGeometry,
    path: RayPath,
    surface: Surface,
    tx_beam: Beam,
    rx_beam: Beam,
    blockers: Iterable[BlockerSlab] = (),
) -> float:
    blockers = tuple(blockers)
    blocked = any(path_blocked(path, blocker) for blocker in blockers)
    straddled = not blocked and any(path_straddled(path, blocker) for blocker in blockers)
    return path_budget_dbm(radio, geom, path, surface, tx_beam, rx_beam, blocked=blocked, straddled=straddled)


def two_ray_rss(
    radio: RadioConfig,
    geom: LinkGeometry,
    surface: Surface,
    tx_beam: Beam,
    rx_beam: Beam,
    blockers: Sequence[BlockerSlab] = (),
    time_ms: int = 0,
) -> ChannelObservation:
    direct = direct_path(geom)
    ground = ground_reflected_path(geom)
    los_blocked = any(path_blocked(direct, blocker) for blocker in blockers)
    ground_blocked = any(path_blocked(ground, blocker) for blocker in blockers)
    straddled = not ground_blocked and any(path_straddled(ground, blocker) for blocker in blockers)
    return two_ray_observation(
        radio,
        geom,
        surface,
        tx_beam,
        rx_beam,
        los_blocked=los_blocked,
        ground_blocked=ground_blocked,
        ground_straddled=straddled,
        time_ms=time_ms,
    )


def two_ray_observation(
    radio: RadioConfig,
    geom: LinkGeometry,
    surface: Surface,
    tx_beam: Beam,
    rx_beam: Beam,
    *,
    los_blocked: bool,
    ground_blocked: bool,
    ground_straddled: bool = False,
    time_ms: int = 0,
) -> ChannelObservation:
    """Two-ray observation from precomputed occlusion flags."""
    direct = direct_path(geom)
    ground = ground_reflected_path(geom)
    los = path_budget_dbm(radio, geom, direct, surface, tx_beam, rx_beam, blocked=los_blocked)
    grd = path_budget_dbm(
        radio, geom, ground, surface, tx_beam, rx_beam, blocked=ground_blocked, straddled=ground_straddled
    )
    return ChannelObservation(
        time_ms=time_ms,
        tx_beam_id=tx_beam.id,
        rx_beam_id=rx_beam.id,
        rss_dbm=power_sum_dbm(los, grd),
        los_rss_dbm=los,
        ground_rss_dbm=grd,
        los_blocked=los_blocked,
        ground_blocked=ground_blocked,
        tracked_path=tracked_path(geom, rx_beam),
    )


def tracked_path(geom: LinkGeometry, rx_beam: Beam) -> PathKind:
    """The ray a receiver beam locks onto: the one nearest its boresight.

    At 2 GHz bandwidth the two rays arrive a few nanoseconds apart and are
    resolved separately, so a beam reports one ray rather than their sum.
    """
    best_kind = PathKind.DIRECT
    best_cost = math.inf
    for path in (direct_path(geom), ground_reflected_path(geom)):
        azimuth, elevation = arrival_angles(geom, path)
        d_az = wrap_deg(azimuth - rx_beam.azimuth_deg) / rx_beam.bw_az_deg
        d_zen = (elevation - rx_beam.zenith_deg) / rx_beam.bw_zen_deg
        cost = d_az * d_az + d_zen * d_zen
        if cost < best_cost:
            best_kind, best_cost = path.kind, cost
    return best_kind
