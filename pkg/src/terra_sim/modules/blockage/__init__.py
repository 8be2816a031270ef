from .models import PedestrianTrack
from .schemas import BlockageProcess, PedestrianConfig, TrackConfig
from .service import blocker_at, generate_tracks, occlusion_interval, scripted_tracks, straddle_interval

__all__ = [
    "BlockageProcess",
    "PedestrianConfig",
    "PedestrianTrack",
    "TrackConfig",
    "blocker_at",
    "generate_tracks",
    "occlusion_interval",
    "scripted_tracks",
    "straddle_interval",
]
