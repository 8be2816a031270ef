from .calibration import calibrate_surface, geometry_grid, median_additional_loss_db, resolve_surface
from .link import LinkChannel
from .models import ChannelObservation, Surface, SurfaceKind
from .schemas import CalibrationGridConfig, RadioConfig, SurfaceConfig
from .service import fspl_db, geometric_excess_db, path_rss, power_sum_dbm, two_ray_rss

__all__ = [
    "CalibrationGridConfig",
    "ChannelObservation",
    "LinkChannel",
    "RadioConfig",
    "Surface",
    "SurfaceConfig",
    "SurfaceKind",
    "calibrate_surface",
    "fspl_db",
    "geometric_excess_db",
    "geometry_grid",
    "median_additional_loss_db",
    "path_rss",
    "power_sum_dbm",
    "resolve_surface",
    "two_ray_rss",
]
