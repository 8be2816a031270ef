"""Fit a surface's reflection loss to a measured median additional loss."""

from __future__ import annotations

import logging
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from ..codebook.models import Beam
from ..geometry.models import LinkGeometry, RayPath
from ..geometry.service import arrival_angles, departure_angles, direct_path, ground_reflected_path
from .errors import CalibrationError
from .models import SURFACE_TARGETS_DB, Surface, SurfaceKind
from .schemas import CalibrationGridConfig, RadioConfig, SurfaceConfig
from .service import path_budget_dbm

logger = logging.getLogger(__name__)

CALIBRATION_TOLERANCE_DB = 0.01


def geometry_grid(config: CalibrationGridConfig) -> list[LinkGeometry]:
    return [LinkGeometry.from_heights(config.h_t_m, config.h_r_m, d) for d in config.distances_m]


def additional_loss_db(radio: RadioConfig, geom: LinkGeometry, surface: Surface) -> float:
    """LoS RSS minus ground RSS with every beam pointed straight at its ray."""
    direct = direct_path(geom)
    ground = ground_reflected_path(geom)
    los = path_budget_dbm(radio, geom, direct, surface, *_aligned_beams(geom, direct))
    grd = path_budget_dbm(radio, geom, ground, surface, *_aligned_beams(geom, ground))
    return los - grd


def median_additional_loss_db(radio: RadioConfig, grid: Sequence[LinkGeometry], surface: Surface) -> float:
    return float(np.median([additional_loss_db(radio, geom, surface) for geom in grid]))


def calibrate_surface(
    radio: RadioConfig,
    grid: Sequence[LinkGeometry],
    target_additional_loss_db: float,
    kind: SurfaceKind = SurfaceKind.CUSTOM,
) -> Surface:
    if not target_additional_loss_db > 0:
        raise CalibrationError(f"Target additional loss must be positive, got {target_additional_loss_db}")
    if not grid:
        raise CalibrationError("Calibration grid is empty")

    def residual(loss_db: float) -> float:
        return median_additional_loss_db(radio, grid, Surface(kind, loss_db)) - target_additional_loss_db

    floor = residual(0.0)
    if floor > 0:
        raise CalibrationError(
            f"Target {target_additional_loss_db:.2f} dB is below the geometric excess "
            f"{floor + target_additional_loss_db:.2f} dB of the grid"
        )
    if floor == 0:
        loss = 0.0
    else:
        loss = float(brentq(residual, 0.0, target_additional_loss_db + 1.0, xtol=1e-9))
    surface = Surface(kind, loss)
    logger.info(
        "Calibrated %s surface: reflection loss %.3f dB for median additional loss %.2f dB",
        kind.value,
        loss,
        target_additional_loss_db,
    )
    return surface


def resolve_surface(config: SurfaceConfig, radio: RadioConfig) -> Surface:
    if config.reflection_loss_db is not None:
        return Surface(config.kind, config.reflection_loss_db)
    target = config.target_additional_loss_db or SURFACE_TARGETS_DB[config.kind]
    return calibrate_surface(radio, geometry_grid(config.calibration), target, kind=config.kind)


def _aligned_beams(geom: LinkGeometry, path: RayPath) -> tuple[Beam, Beam]:
    tx_az, tx_el = departure_angles(geom, path)
    rx_az, rx_el = arrival_angles(geom, path)
    return Beam(id=0, azimuth_deg=tx_az, zenith_deg=tx_el), Beam(id=0, azimuth_deg=rx_az, zenith_deg=rx_el)
