from .models import Beam, Codebook
from .schemas import CodebookConfig
from .service import beam_gain, build_codebook, default_codebook, nearest_beam, zenith_neighbors

__all__ = [
    "Beam",
    "Codebook",
    "CodebookConfig",
    "beam_gain",
    "build_codebook",
    "default_codebook",
    "nearest_beam",
    "zenith_neighbors",
]
