"""Per-scenario channel with memoized observations."""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from ..codebook.models import Beam, Codebook
from ..codebook.service import nearest_beam
from ..geometry.models import LinkGeometry
from ..geometry.service import departure_angles, path_for
from .models import ChannelObservation, Surface
from .schemas import RadioConfig
from .service import tracked_path, two_ray_observation

# (los_blocked, ground_blocked, ground_straddled)
Condition = tuple[bool, bool, bool]

CLEAR: Condition = (False, False, False)


class LinkChannel:
    """Binds geometry, surface, radio and codebook for one scenario.

    For every receiver beam the transmitter steers the codebook beam nearest
    the departure direction of the ray that receiver beam tracks.
    """

    def __init__(self, radio: RadioConfig, geom: LinkGeometry, surface: Surface, codebook: Codebook) -> None:
        self.radio = radio
        self.geom = geom
        self.surface = surface
        self.codebook = codebook
        self._tx_beams: dict[int, Beam] = {}
        for rx_beam in codebook:
            path = path_for(geom, tracked_path(geom, rx_beam))
            azimuth, elevation = departure_angles(geom, path)
            self._tx_beams[rx_beam.id] = nearest_beam(codebook, azimuth, elevation)
        self._cache: dict[tuple[int, Condition], ChannelObservation] = {}

    def tx_beam_for(self, rx_beam_id: int) -> Beam:
        return self._tx_beams[rx_beam_id]

    def observe(self, rx_beam_id: int, condition: Condition = CLEAR, time_ms: int = 0) -> ChannelObservation:
        key = (rx_beam_id, condition)
        observation = self._cache.get(key)
        if observation is None:
            los_blocked, ground_blocked, straddled = condition
            observation = two_ray_observation(
                self.radio,
                self.geom,
                self.surface,
                self._tx_beams[rx_beam_id],
                self.codebook.beam(rx_beam_id),
                los_blocked=los_blocked,
                ground_blocked=ground_blocked,
                ground_straddled=straddled,
            )
            self._cache[key] = observation
        if observation.time_ms != time_ms:
            return replace(observation, time_ms=time_ms)
        return observation

    def condition_table(self, condition: Condition) -> np.ndarray:
        """Rows: tracked, combined, LoS, ground RSS; one column per beam."""
        table = np.empty((4, len(self.codebook)), dtype=float)
        for beam in self.codebook:
            obs = self.observe(beam.id, condition)
            table[:, beam.id] = (obs.tracked_rss_dbm, obs.rss_dbm, obs.los_rss_dbm, obs.ground_rss_dbm)
        return table
