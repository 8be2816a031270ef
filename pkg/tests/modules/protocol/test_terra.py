"""Tests for the Terra state machine."""

import pytest

from terra_sim.modules.protocol import (
    Activity,
    BeamCache,
    DiscoveryMode,
    ProtocolConfig,
    ProtocolState,
    StateKind,
    discovery_candidates,
    discovery_episodes,
    initial_state,
    terra_step,
)

from .conftest import CAMPAIGN_LEVELS, LevelPort, drive


class TerraDriver:
    """Keeps the beam cache between ticks."""

    def __init__(self, config, port, cache=None):
        self.config = config
        self.port = port
        self.cache = cache or BeamCache()

    def __call__(self, state, time_ms):
        state, self.cache, actions = terra_step(state, self.cache, self.config, self.port, time_ms)
        return state, actions


def _events(actions):
    return [a.event for a in actions if a.event != "measure"]


@pytest.fixture
def los_state():
    return ProtocolState(
        kind=StateKind.LOS_OPERATION, serving_beam_id=11, nominal_rss_dbm=-30.0, last_ctrl_ok_ms=0, last_ba_ms=0
    )


@pytest.fixture
def full_cache():
    return BeamCache(los_beam_id=11, nlos_beam_id=13, nominal_los_rss_dbm=-30.0, nlos_rss_at_discovery_dbm=-34.9)


class TestAdaptationAndDiscovery:
    """Beam adaptation followed by ground-reflection discovery."""

    def test_adaptation_then_neighbor_search(self, config, port):
        """The sweep picks the LoS beam and NBS caches the ground beam in one measurement."""
        driver = TerraDriver(config, port)
        state, actions = drive(driver, initial_state(), port, 0, 25)
        assert state.kind is StateKind.GROUND_DISCOVERY
        assert state.mode is DiscoveryMode.NBS
        assert driver.cache.los_beam_id == 11
        assert driver.cache.nominal_los_rss_dbm == -30.0

        state, more = drive(driver, state, port, 25, 1)
        assert state.kind is StateKind.LOS_OPERATION
        assert driver.cache.nlos_beam_id == 13
        assert discovery_episodes(actions + more) == [(DiscoveryMode.NBS, 1)]

    def test_every_sweep_tick_measures(self, config, port):
        driver = TerraDriver(config, port)
        state = initial_state()
        for time_ms in range(25):
            port.begin_tick(time_ms)
            state, _ = driver(state, time_ms)
            assert port.activity is Activity.MEASURE
            assert port.beam_id == time_ms

    def test_neighbor_candidates_from_pose(self, port):
        """Pose predicts -26.6 degrees: the -30 beam, then its nearest zenith neighbor."""
        cache = BeamCache(los_beam_id=11)
        assert discovery_candidates(DiscoveryMode.NBS, cache, port) == (13, 14)

    def test_exhaustive_order(self, port):
        """LoS column by zenith distance, then every other beam by id."""
        cache = BeamCache(los_beam_id=11)
        order = discovery_candidates(DiscoveryMode.ES, cache, port)
        assert order[:4] == (12, 10, 13, 14)
        assert order[4:] == tuple(range(10)) + tuple(range(15, 25))
        assert 11 not in order

    def test_neighbor_search_falls_back_to_exhaustive(self, config):
        """Two failed NBS measurements hand over to ES."""
        port = LevelPort({11: -30.0, 12: -35.3})
        driver = TerraDriver(config, port)
        state, actions = drive(driver, initial_state(), port, 0, 28)
        assert state.kind is StateKind.LOS_OPERATION
        assert driver.cache.nlos_beam_id == 12
        assert "nbs_fallback" in _events(actions)
        assert discovery_episodes(actions) == [(DiscoveryMode.NBS, 2), (DiscoveryMode.ES, 1)]

    def test_without_pose_starts_exhaustive(self, port):
        config = ProtocolConfig(pose_available=False)
        driver = TerraDriver(config, port)
        state, actions = drive(driver, initial_state(), port, 0, 26)
        assert state.kind is StateKind.LOS_OPERATION
        assert driver.cache.nlos_beam_id == 12
        assert discovery_episodes(actions) == [(DiscoveryMode.ES, 1)]

    def test_off_azimuth_beam_never_cached(self, config):
        """A strong beam in another column is measured but not cached."""
        port = LevelPort({11: -30.0, 3: -40.0})
        driver = TerraDriver(config, port)
        state, actions = drive(driver, initial_state(), port, 0, 51)
        assert state.kind is StateKind.LOS_OPERATION
        assert driver.cache.nlos_beam_id is None
        assert "discovery_exhausted" in _events(actions)
        episodes = discovery_episodes(actions)
        assert episodes == [(DiscoveryMode.NBS, 2), (DiscoveryMode.ES, 24)]


class TestBlockageHandling:
    """LoS operation, fallback to the cached beam, probing and revert."""

    def test_switch_after_consecutive_drops(self, config, port, los_state, full_cache):
        """Three samples 10 dB below nominal move the link to the cached beam."""
        port.levels[11] = -75.0
        driver = TerraDriver(config, port, full_cache)
        state, actions = drive(driver, los_state, port, 1, 2)
        assert state.kind is StateKind.LOS_OPERATION
        assert state.drop_count == 2

        state, more = drive(driver, state, port, 3, 1)
        assert state.kind is StateKind.NLOS_OPERATION
        assert state.next_probe_ms == 23
        assert "blockage_detected" in _events(more)

        port.begin_tick(4)
        state, _ = driver(state, 4)
        assert port.activity is Activity.DATA
        assert port.beam_id == 13

    def test_probe_and_revert(self, config, port, full_cache):
        """The LoS beam is probed every 20 ms and the link reverts once it is back."""
        port.levels[11] = -75.0
        nlos = ProtocolState(
            kind=StateKind.NLOS_OPERATION,
            serving_beam_id=13,
            nominal_rss_dbm=-30.0,
            last_ctrl_ok_ms=0,
            next_probe_ms=23,
        )
        driver = TerraDriver(config, port, full_cache)
        state, _ = drive(driver, nlos, port, 4, 19)
        assert state.kind is StateKind.NLOS_OPERATION

        port.begin_tick(23)
        state, _ = driver(state, 23)
        assert port.activity is Activity.MEASURE
        assert port.beam_id == 11
        assert state.kind is StateKind.NLOS_OPERATION
        assert state.next_probe_ms == 43

        port.levels[11] = -30.0
        state, actions = drive(driver, state, port, 24, 20)
        assert state.kind is StateKind.LOS_OPERATION
        assert [a.time_ms for a in actions if a.event == "revert"] == [43]

    def test_partial_recovery_does_not_revert(self, config, port, full_cache):
        """A LoS probe more than the revert margin below nominal keeps the NLoS beam."""
        port.levels[11] = -37.0
        nlos = ProtocolState(
            kind=StateKind.NLOS_OPERATION, serving_beam_id=13, nominal_rss_dbm=-30.0, last_ctrl_ok_ms=0, next_probe_ms=1
        )
        driver = TerraDriver(config, port, full_cache)
        state, _ = drive(driver, nlos, port, 1, 1)
        assert state.kind is StateKind.NLOS_OPERATION

    def test_missing_nlos_beam_forces_exhaustive(self, config, port, los_state):
        """With an empty cache a blockage triggers ES and resumes on the found beam."""
        port.levels[11] = -75.0
        driver = TerraDriver(config, port, BeamCache(los_beam_id=11, nominal_los_rss_dbm=-30.0))
        state, actions = drive(driver, los_state, port, 1, 3)
        assert state.kind is StateKind.GROUND_DISCOVERY
        assert state.resume is StateKind.NLOS_OPERATION
        assert "nlos_missing" in _events(actions)

        state, _ = drive(driver, state, port, 4, 1)
        assert state.kind is StateKind.NLOS_OPERATION
        assert state.serving_beam_id == 12
        assert driver.cache.nlos_beam_id == 12

    def test_lost_nlos_beam_rediscovers(self, config, full_cache):
        """The cached beam falling below the floor for K ticks restarts discovery."""
        port = LevelPort({11: -75.0, 12: -35.3})
        nlos = ProtocolState(
            kind=StateKind.NLOS_OPERATION, serving_beam_id=13, nominal_rss_dbm=-30.0, last_ctrl_ok_ms=0, next_probe_ms=500
        )
        driver = TerraDriver(config, port, full_cache)
        state, actions = drive(driver, nlos, port, 1, 3)
        assert "nlos_lost" in _events(actions)
        assert state.kind is StateKind.GROUND_DISCOVERY
        assert state.mode is DiscoveryMode.ES

        state, _ = drive(driver, state, port, 4, 1)
        assert state.kind is StateKind.NLOS_OPERATION
        assert state.serving_beam_id == 12

    def test_slow_drift_readapts(self, config, port, los_state, full_cache):
        """A 6 dB sag held for the drift window restarts beam adaptation."""
        port.levels[11] = -36.0
        driver = TerraDriver(config, port, full_cache)
        state, _ = drive(driver, los_state, port, 1, 200)
        assert state.kind is StateKind.LOS_OPERATION

        state, actions = drive(driver, state, port, 201, 1)
        assert "drift" in _events(actions)
        assert state.kind is StateKind.BEAM_ADAPTATION

    def test_periodic_adaptation(self, port, los_state, full_cache):
        config = ProtocolConfig(ba_period_ms=50)
        driver = TerraDriver(config, port, full_cache)
        state, actions = drive(driver, los_state, port, 1, 50)
        assert "ba_periodic" in _events(actions)
        assert state.kind is StateKind.BEAM_ADAPTATION


class TestSync:
    """Loss of synchronization and re-joining."""

    def test_silent_link_reacquires(self, config, los_state):
        """With every beam silent the link loses sync after the timeout and idles."""
        port = LevelPort({})
        driver = TerraDriver(config, port, BeamCache(los_beam_id=11, nominal_los_rss_dbm=-30.0))
        state, actions = drive(driver, los_state, port, 1, 100)
        assert state.kind is StateKind.REACQUISITION
        assert port.activity is Activity.IDLE
        assert "sync_lost" in _events(actions)

    def test_campaign_levels_keep_sync(self, config, port):
        driver = TerraDriver(config, port)
        state, actions = drive(driver, initial_state(), port, 0, 2000)
        assert state.kind is StateKind.LOS_OPERATION
        assert "sync_lost" not in _events(actions)
        assert CAMPAIGN_LEVELS[driver.cache.los_beam_id] == -30.0
