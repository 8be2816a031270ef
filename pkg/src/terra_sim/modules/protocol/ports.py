"""Driver interface between a protocol and the radio it controls.

The same state machines run against the simulated channel and against
recorded traces; both only see this interface.
"""

from __future__ import annotations

from abc import ABC, abstractmethod

import numpy as np

from ..codebook.models import Codebook
from ..geometry.models import LinkGeometry
from .errors import ProtocolError
from .models import Activity


class MeasurementPort(ABC):
    """One radio activity per tick: serve a beam, measure a beam, or stay idle.

    Listening for the base-station broadcast (beacon_heard) is passive and
    does not count as an activity.
    """

    def __init__(
        self,
        codebook: Codebook,
        tick_ms: int,
        noise_floor_dbm: float,
        ctrl_threshold_dbm: float,
        pose: LinkGeometry | None = None,
    ) -> None:
        """Initialize the port.

        Args:
            codebook: Receiver beams the protocol may select
            tick_ms: Duration of one tick
            noise_floor_dbm: Below this level nothing is decodable
            ctrl_threshold_dbm: Minimum RSS for a control reception
            pose: Link geometry known to the receiver, if any
        """
        self.codebook = codebook
        self.tick_ms = tick_ms
        self.noise_floor_dbm = noise_floor_dbm
        self.ctrl_threshold_dbm = ctrl_threshold_dbm
        self.pose = pose
        self.time_ms = 0
        self.activity: Activity | None = None
        self.beam_id: int | None = None
        self.last_rss_dbm: float = -np.inf

    @abstractmethod
    def rss(self, beam_id: int) -> float:
        """RSS reported on beam_id during the current tick."""

    def begin_tick(self, time_ms: int) -> None:
        self.time_ms = time_ms
        self.activity = None
        self.beam_id = None
        self.last_rss_dbm = -np.inf

    def measure(self, beam_id: int) -> float:
        self._claim(Activity.MEASURE, beam_id)
        self.last_rss_dbm = self.rss(beam_id)
        return self.last_rss_dbm

    def serve(self, beam_id: int) -> float:
        self._claim(Activity.DATA, beam_id)
        self.last_rss_dbm = self.rss(beam_id)
        return self.last_rss_dbm

    def idle(self) -> None:
        self._claim(Activity.IDLE, None)

    def beacon_heard(self, beam_id: int) -> bool:
        return self.rss(beam_id) >= self.ctrl_threshold_dbm

    def control_ok(self, rss_dbm: float) -> bool:
        return rss_dbm >= self.ctrl_threshold_dbm

    def _claim(self, activity: Activity, beam_id: int | None) -> None:
        if self.activity is not None:
            raise ProtocolError(
                f"Tick {self.time_ms} ms: {activity.value} requested after {self.activity.value}"
            )
        if beam_id is not None and not 0 <= beam_id < len(self.codebook):
            raise ProtocolError(f"Tick {self.time_ms} ms: beam {beam_id} is not in the codebook")
        self.activity = activity
        self.beam_id = beam_id


class RssMatrixPort(MeasurementPort):
    """Port backed by a ticks x beams matrix of reported RSS."""

    def __init__(
        self,
        rss_matrix: np.ndarray,
        codebook: Codebook,
        tick_ms: int,
        noise_floor_dbm: float,
        ctrl_threshold_dbm: float,
        pose: LinkGeometry | None = None,
        start_ms: int = 0,
    ) -> None:
        super().__init__(codebook, tick_ms, noise_floor_dbm, ctrl_threshold_dbm, pose)
        if rss_matrix.ndim != 2 or rss_matrix.shape[1] != len(codebook):
            raise ProtocolError(
                f"RSS matrix has shape {rss_matrix.shape}, expected (ticks, {len(codebook)})"
            )
        self.rss_matrix = rss_matrix
        self.start_ms = start_ms
        self._row = rss_matrix[0] if len(rss_matrix) else None

    def begin_tick(self, time_ms: int) -> None:
        super().begin_tick(time_ms)
        index = (time_ms - self.start_ms) // self.tick_ms
        if not 0 <= index < len(self.rss_matrix):
            raise ProtocolError(f"Tick {time_ms} ms is outside the RSS matrix")
        self._row = self.rss_matrix[index]

    def rss(self, beam_id: int) -> float:
        return float(self._row[beam_id])
