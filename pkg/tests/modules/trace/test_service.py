"""Tests for the per-beam RSS trace format and replay."""

import math

import numpy as np
import pytest

from terra_sim.core.errors import ScenarioError
from terra_sim.modules.engine import load_scenario, run
from terra_sim.modules.protocol import Activity
from terra_sim.modules.trace import TraceParseError, export_trace, parse_trace, replay

HEADER = "time_ms,rss_b0,rss_b1\n"


@pytest.fixture(scope="module")
def crossing_run():
    return run(load_scenario("single-crossing"))


class TestParseTrace:
    """Trace text is checked row by row."""

    def test_valid(self):
        trace = parse_trace(HEADER + "10,-40.5,-inf\n12,-41,-80\n14,-42,-81\n")
        assert trace.tick_ms == 2
        assert trace.start_ms == 10
        assert trace.beam_count == 2
        assert len(trace) == 3
        assert math.isinf(trace.rss[0, 1])

    def test_blank_lines_skipped(self):
        assert len(parse_trace(HEADER + "0,-40,-50\n\n1,-40,-50\n")) == 2

    @pytest.mark.parametrize(
        "text, line, message",
        [
            ("", 1, "empty"),
            ("time,rss_b0\n0,-40\n", 1, "header"),
            ("time_ms,rss_b1\n0,-40\n", 1, "header"),
            (HEADER, 2, "no rows"),
            (HEADER + "0,-40\n", 2, "columns"),
            (HEADER + "0,-40,-50\n0,-40,-50\n", 3, "does not increase"),
            (HEADER + "0,-40,-50\n1,-40,-50\n3,-40,-50\n", 4, "differs"),
            (HEADER + "0,-40,-50\nx,-40,-50\n", 3, "not a number"),
            (HEADER + "0.5,-40,-50\n", 2, "whole number"),
            (HEADER + "0,-40,abc\n", 2, "not a number"),
            (HEADER + "0,-40,nan\n", 2, "only '-inf'"),
            (HEADER + "0,inf,-50\n", 2, "only '-inf'"),
        ],
    )
    def test_errors_name_the_line(self, text, line, message):
        with pytest.raises(TraceParseError, match=message) as excinfo:
            parse_trace(text)
        assert excinfo.value.line == line


class TestExport:
    def test_export_parses_back(self):
        matrix = np.array([[-30.123456789, -math.inf], [-31.0, -75.5]])
        trace = parse_trace(export_trace(matrix, 1, start_ms=100))
        assert trace.start_ms == 100
        assert trace.rss.tolist() == matrix.tolist()

    def test_header(self):
        assert export_trace(np.zeros((1, 3)), 1).splitlines()[0] == "time_ms,rss_b0,rss_b1,rss_b2"


class TestReplay:
    """Replaying a simulated run's trace repeats its decisions."""

    def test_decisions_match_simulation(self, crossing_run):
        trace = parse_trace(export_trace(crossing_run.rss_matrix, crossing_run.scenario.tick_ms))
        replayed = replay(trace, crossing_run.scenario)

        def decisions(result):
            return [(r.time_ms, r.state, r.activity, r.serving_beam_id, r.serving_rss_dbm) for r in result.records]

        assert decisions(replayed) == decisions(crossing_run)
        assert replayed.actions == crossing_run.actions

    def test_dips_become_events(self, crossing_run):
        trace = parse_trace(export_trace(crossing_run.rss_matrix, crossing_run.scenario.tick_ms))
        replayed = replay(trace, crossing_run.scenario)
        assert replayed.summary.event_count >= 1
        assert replayed.summary.discovery_modes == ["nbs"]

    def test_beam_count_mismatch(self, crossing_run):
        trace = parse_trace(export_trace(crossing_run.rss_matrix[:, :24], 1))
        with pytest.raises(ScenarioError, match="24 beam columns"):
            replay(trace, crossing_run.scenario)


def _campaign_trace(ticks, dip=None):
    """Synthetic 25-beam trace: LoS on beam 11, ground ray on 12 and 13, the rest weak.

    ``dip`` is a (start, end) tick range where every beam at or above the
    horizon drops to -80 dBm, the way a pedestrian cuts the direct ray.
    """
    matrix = np.full((ticks, 25), -60.0)
    matrix[:, 11] = -30.0
    matrix[:, 12] = -35.3
    matrix[:, 13] = -34.9
    if dip is not None:
        level = [beam for beam in range(25) if beam % 5 in (0, 1)]
        matrix[dip[0] : dip[1], level] = -80.0
    return parse_trace(export_trace(matrix, 1))


class TestSyntheticReplay:
    """Hand-built traces with known answers."""

    @pytest.fixture
    def scenario(self):
        return load_scenario("single-crossing")

    def test_steady_link_stays_on_los(self, scenario):
        result = replay(_campaign_trace(2000), scenario)
        settled = result.records[26:]
        assert all(r.state == "los_operation" and r.serving_beam_id == 11 for r in settled)
        assert all(r.activity is Activity.DATA and r.data_pkt_ok for r in settled)
        assert result.summary.event_count == 0
        assert result.summary.discovery_costs == [1]

    def test_dip_rides_the_ground_beam(self, scenario):
        result = replay(_campaign_trace(2000, dip=(500, 700)), scenario)
        config = scenario.protocol_config
        nlos = [r for r in result.records if r.state == "nlos_operation" and r.activity is Activity.DATA]
        assert nlos
        assert {r.serving_beam_id for r in nlos} == {13}
        assert all(500 <= r.time_ms < 700 + config.probe_period_ms + 1 for r in nlos)

        (event,) = result.events
        assert (event.occlusion_start_ms, event.occlusion_end_ms) == (500, 700)
        assert event.data_errors == config.detect_consecutive_ticks
        assert event.window_end_ms - 700 <= config.probe_period_ms + 1
