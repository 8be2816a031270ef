import pytest

from terra_sim.modules.codebook.service import default_codebook
from terra_sim.modules.geometry.models import LinkGeometry
from terra_sim.modules.protocol.ports import MeasurementPort
from terra_sim.modules.protocol.schemas import ProtocolConfig

QUIET_DBM = -90.0


class LevelPort(MeasurementPort):
    """Port whose beams report fixed levels the test can change between ticks."""

    def __init__(self, levels=None, pose=True):
        super().__init__(
            default_codebook(),
            tick_ms=1,
            noise_floor_dbm=-70.0,
            ctrl_threshold_dbm=-67.0,
            pose=LinkGeometry.from_heights(2.0, 1.0, 6.0) if pose else None,
        )
        self.levels = dict(levels or {})

    def rss(self, beam_id):
        return self.levels.get(beam_id, QUIET_DBM)


# LoS on the horizontal beam, ground ray on the -30 and -15 degree beams below it
CAMPAIGN_LEVELS = {11: -30.0, 12: -35.3, 13: -34.9, 10: -45.0, 14: -45.0}


@pytest.fixture
def port():
    return LevelPort(CAMPAIGN_LEVELS)


@pytest.fixture
def config():
    return ProtocolConfig()


def drive(step, state, port, start_ms, ticks):
    """Run ``step(state, time_ms)`` for consecutive ticks; returns the final state and all actions."""
    actions = []
    for time_ms in range(start_ms, start_ms + ticks):
        port.begin_tick(time_ms)
        state, tick_actions = step(state, time_ms)
        assert port.activity is not None, f"no activity at {time_ms} ms"
        actions.extend(tick_actions)
    return state, actions
