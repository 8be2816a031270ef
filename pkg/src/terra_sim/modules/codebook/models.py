"""Beam and codebook value types."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CodebookError


@dataclass(frozen=True, slots=True)
class Beam:
    """One steerable beam of the array.

    Attributes:
        id: Dense index inside the codebook
        azimuth_deg: Pointing azimuth relative to the array boresight
        zenith_deg: Pointing elevation, negative = downtilt
        peak_gain_dbi: Boresight directivity
        bw_az_deg: 3 dB azimuth beamwidth
        bw_zen_deg: 3 dB zenith beamwidth
        sidelobe_floor_db: Maximum attenuation below peak
    """

    id: int
    azimuth_deg: float
    zenith_deg: float
    peak_gain_dbi: float = 17.0
    bw_az_deg: float = 18.0
    bw_zen_deg: float = 60.0
    sidelobe_floor_db: float = 20.0

    def __post_init__(self) -> None:
        if self.bw_az_deg <= 0 or self.bw_zen_deg <= 0:
            raise CodebookError(f"Beam {self.id}: beamwidths must be positive")
        if self.sidelobe_floor_db <= 0:
            raise CodebookError(f"Beam {self.id}: sidelobe floor must be positive")


@dataclass(frozen=True, slots=True)
class Codebook:
    """Grid codebook; beam ids run azimuth-major, zenith-minor."""

    beams: tuple[Beam, ...]
    az_grid: tuple[float, ...]
    zen_grid: tuple[float, ...]
    _by_id: dict[int, Beam] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.beams) != len(self.az_grid) * len(self.zen_grid):
            raise CodebookError(
                f"Codebook holds {len(self.beams)} beams for a {len(self.az_grid)}x{len(self.zen_grid)} grid"
            )
        ids = [beam.id for beam in self.beams]
        if ids != list(range(len(ids))):
            raise CodebookError("Beam ids must be unique and dense from 0")
        object.__setattr__(self, "_by_id", {beam.id: beam for beam in self.beams})

    def __len__(self) -> int:
        return len(self.beams)

    def __iter__(self):
        return iter(self.beams)

    def __contains__(self, beam: object) -> bool:
        return isinstance(beam, Beam) and self._by_id.get(beam.id) == beam

    def beam(self, beam_id: int) -> Beam:
        try:
            return self._by_id[beam_id]
        except KeyError:
            raise CodebookError(f"Beam {beam_id} is not in the codebook") from None

    def at_azimuth(self, azimuth_deg: float) -> list[Beam]:
        return [beam for beam in self.beams if beam.azimuth_deg == azimuth_deg]
