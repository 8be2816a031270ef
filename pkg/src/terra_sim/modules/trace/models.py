from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, slots=True)
class RssTrace:
    """Per-beam RSS log, one row per tick; -inf marks below-floor readings."""

    tick_ms: int
    times_ms: np.ndarray
    rss: np.ndarray

    @property
    def beam_count(self) -> int:
        return int(self.rss.shape[1])

    @property
    def start_ms(self) -> int:
        return int(self.times_ms[0])

    def __len__(self) -> int:
        return int(self.rss.shape[0])
