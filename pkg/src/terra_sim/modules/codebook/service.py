"""Codebook construction, beam pattern and beam lookup."""

from __future__ import annotations

from functools import lru_cache

from ..geometry.service import wrap_deg
from .errors import CodebookError
from .models import Beam, Codebook
from .schemas import CodebookConfig


def build_codebook(config: CodebookConfig) -> Codebook:
    beams: list[Beam] = []
    for azimuth in config.az_grid_deg:
        for zenith in config.zen_grid_deg:
            beams.append(
                Beam(
                    id=len(beams),
                    azimuth_deg=float(azimuth),
                    zenith_deg=float(zenith),
                    peak_gain_dbi=config.peak_gain_dbi,
                    bw_az_deg=config.bw_az_deg,
                    bw_zen_deg=config.bw_zen_deg,
                    sidelobe_floor_db=config.sidelobe_floor_db,
                )
            )
    return Codebook(
        beams=tuple(beams),
        az_grid=tuple(float(a) for a in config.az_grid_deg),
        zen_grid=tuple(float(z) for z in config.zen_grid_deg),
    )


@lru_cache(maxsize=1)
def default_codebook() -> Codebook:
    """The 25-beam, 5 x 5 grid covering a 120 degree sector."""
    return build_codebook(CodebookConfig())


def beam_gain(beam: Beam, azimuth_deg: float, elevation_deg: float) -> float:
    """Quadratic (Gaussian in linear units) mainlobe clipped at the sidelobe floor."""
    return beam.peak_gain_dbi - min(_angular_cost(beam, azimuth_deg, elevation_deg), beam.sidelobe_floor_db)


def nearest_beam(codebook: Codebook, azimuth_deg: float, elevation_deg: float) -> Beam:
    best = codebook.beams[0]
    best_cost = _normalized_offset(best, azimuth_deg, elevation_deg)
    for beam in codebook.beams[1:]:
        cost = _normalized_offset(beam, azimuth_deg, elevation_deg)
        # strict < keeps the lowest id on ties
        if cost < best_cost:
            best, best_cost = beam, cost
    return best


def zenith_neighbors(codebook: Codebook, beam: Beam, k: int) -> list[Beam]:
    """Beams at the same azimuth, nearest zenith first; ties go to the more negative zenith."""
    if beam not in codebook:
        raise CodebookError(f"Beam {beam.id} is not in the codebook")
    column = codebook.at_azimuth(beam.azimuth_deg)
    column.sort(key=lambda other: (abs(other.zenith_deg - beam.zenith_deg), other.zenith_deg))
    return column[: max(k, 0)]


def _normalized_offset(beam: Beam, azimuth_deg: float, elevation_deg: float) -> float:
    d_az = wrap_deg(azimuth_deg - beam.azimuth_deg) / beam.bw_az_deg
    d_zen = (elevation_deg - beam.zenith_deg) / beam.bw_zen_deg
    return d_az * d_az + d_zen * d_zen


def _angular_cost(beam: Beam, azimuth_deg: float, elevation_deg: float) -> float:
    # 12 dB at one full beamwidth puts the 3 dB point at half beamwidth
    return 12.0 * _normalized_offset(beam, azimuth_deg, elevation_deg)
