from .errors import GeometryError
from .models import BlockerSlab, LinkGeometry, PathKind, RayPath
from .service import (
    arrival_angles,
    departure_angles,
    direct_path,
    ground_reflected_path,
    los_occlusion_reach,
    path_blocked,
    path_for,
    path_straddled,
    wrap_deg,
)

__all__ = [
    "BlockerSlab",
    "GeometryError",
    "LinkGeometry",
    "PathKind",
    "RayPath",
    "arrival_angles",
    "departure_angles",
    "direct_path",
    "ground_reflected_path",
    "los_occlusion_reach",
    "path_blocked",
    "path_for",
    "path_straddled",
    "wrap_deg",
]
