"""Tests for codebook construction, beam pattern and lookups."""

import numpy as np
import pytest
from pydantic import ValidationError

from terra_sim.modules.codebook import (
    Beam,
    CodebookConfig,
    beam_gain,
    build_codebook,
    nearest_beam,
    zenith_neighbors,
)
from terra_sim.modules.codebook.errors import CodebookError


class TestDefaultCodebook:
    """The 25-beam, 5 x 5 default grid."""

    def test_size_and_grid(self, codebook):
        """25 beams over five azimuths and five zeniths."""
        assert len(codebook) == 25
        assert codebook.az_grid == (-48.0, -24.0, 0.0, 24.0, 48.0)
        assert codebook.zen_grid == (20.0, 0.0, -15.0, -30.0, -45.0)
        assert max(codebook.az_grid) - min(codebook.az_grid) == 96.0

    def test_ids_azimuth_major(self, codebook):
        """Ids walk the zenith grid inside each azimuth column."""
        assert [b.id for b in codebook] == list(range(25))
        beam = codebook.beam(11)
        assert (beam.azimuth_deg, beam.zenith_deg) == (0.0, 0.0)
        assert (codebook.beam(13).azimuth_deg, codebook.beam(13).zenith_deg) == (0.0, -30.0)

    def test_default_beam_parameters(self, codebook):
        beam = codebook.beam(0)
        assert beam.peak_gain_dbi == 17.0
        assert beam.bw_az_deg == 18.0
        assert beam.bw_zen_deg == 60.0
        assert beam.sidelobe_floor_db == 20.0

    def test_unknown_beam(self, codebook):
        with pytest.raises(CodebookError):
            codebook.beam(25)


class TestCustomCodebook:
    """Codebooks built from configuration."""

    def test_three_by_two(self):
        """A 3 azimuth x 2 zenith grid yields six beams."""
        book = build_codebook(CodebookConfig(az_grid_deg=[-30.0, 0.0, 30.0], zen_grid_deg=[0.0, -30.0]))
        assert len(book) == 6
        assert (book.beam(1).azimuth_deg, book.beam(1).zenith_deg) == (-30.0, -30.0)
        assert (book.beam(2).azimuth_deg, book.beam(2).zenith_deg) == (0.0, 0.0)

    def test_duplicate_grid_angles_rejected(self):
        with pytest.raises(ValidationError):
            CodebookConfig(az_grid_deg=[0.0, 0.0])

    def test_empty_grid_rejected(self):
        with pytest.raises(ValidationError):
            CodebookConfig(zen_grid_deg=[])

    def test_unknown_key_rejected(self):
        with pytest.raises(ValidationError):
            CodebookConfig(beams=25)


class TestBeamGain:
    """Quadratic mainlobe clipped at the sidelobe floor."""

    @pytest.fixture
    def beam(self):
        return Beam(id=0, azimuth_deg=0.0, zenith_deg=0.0)

    def test_boresight(self, beam):
        assert beam_gain(beam, 0.0, 0.0) == pytest.approx(17.0)

    def test_half_beamwidth_is_3db_down(self, beam):
        """Half the beamwidth off axis in either plane costs 3 dB."""
        assert beam_gain(beam, 9.0, 0.0) == pytest.approx(14.0)
        assert beam_gain(beam, 0.0, -30.0) == pytest.approx(14.0)

    def test_sidelobe_floor(self, beam):
        """Far off axis the gain bottoms out 20 dB below peak."""
        assert beam_gain(beam, 90.0, 0.0) == pytest.approx(-3.0)
        assert beam_gain(beam, 180.0, 80.0) == pytest.approx(-3.0)

    def test_azimuth_wraps(self):
        """Offsets are taken the short way around."""
        beam = Beam(id=0, azimuth_deg=175.0, zenith_deg=0.0)
        assert beam_gain(beam, -175.0, 0.0) == pytest.approx(17.0 - 12.0 * (10.0 / 18.0) ** 2)

    def test_bounded_by_peak_and_floor(self, codebook):
        azimuths = np.linspace(-180.0, 180.0, 73)
        elevations = np.linspace(-90.0, 90.0, 37)
        for beam in codebook:
            gains = [beam_gain(beam, az, el) for az in azimuths for el in elevations]
            assert max(gains) <= beam.peak_gain_dbi
            assert min(gains) >= beam.peak_gain_dbi - beam.sidelobe_floor_db

    def test_continuous(self, beam):
        """A tenth of a degree never moves the gain by more than a fifth of a dB."""
        azimuths = np.arange(-60.0, 60.0, 0.1)
        for elevation in (-45.0, 0.0, 30.0):
            gains = np.array([beam_gain(beam, az, elevation) for az in azimuths])
            assert np.abs(np.diff(gains)).max() < 0.2
        elevations = np.arange(-90.0, 90.0, 0.1)
        gains = np.array([beam_gain(beam, 5.0, el) for el in elevations])
        assert np.abs(np.diff(gains)).max() < 0.2

    def test_invalid_beam(self):
        with pytest.raises(CodebookError):
            Beam(id=0, azimuth_deg=0.0, zenith_deg=0.0, bw_az_deg=0.0)


class TestLookups:
    """nearest_beam and zenith_neighbors."""

    def test_nearest_to_direct_ray(self, codebook):
        """The direct ray at +9.46 degrees maps to the horizontal beam."""
        assert nearest_beam(codebook, 0.0, 9.46).id == 11

    def test_nearest_to_ground_ray(self, codebook):
        """The ground ray at -26.57 degrees maps to the -30 degree beam."""
        assert nearest_beam(codebook, 0.0, -26.57).id == 13

    def test_tie_goes_to_lowest_id(self, codebook):
        """Midway between two azimuth columns the lower id wins."""
        assert nearest_beam(codebook, 12.0, 0.0).id == 11

    def test_zenith_neighbors_order(self, codebook):
        """Self first, then nearest zenith; equal offsets prefer the downtilt."""
        neighbors = zenith_neighbors(codebook, codebook.beam(13), 3)
        assert [b.id for b in neighbors] == [13, 14, 12]

    def test_zenith_neighbors_stay_in_column(self, codebook):
        neighbors = zenith_neighbors(codebook, codebook.beam(11), 10)
        assert len(neighbors) == 5
        assert {b.azimuth_deg for b in neighbors} == {0.0}

    def test_zenith_neighbors_foreign_beam(self, codebook):
        with pytest.raises(CodebookError):
            zenith_neighbors(codebook, Beam(id=3, azimuth_deg=5.0, zenith_deg=0.0), 2)
