"""Tests for fitting surface reflection loss to measured additional loss."""

import pytest
from pydantic import ValidationError

from terra_sim.modules.channel import (
    CalibrationGridConfig,
    RadioConfig,
    Surface,
    SurfaceConfig,
    SurfaceKind,
    calibrate_surface,
    geometry_grid,
    median_additional_loss_db,
    resolve_surface,
)
from terra_sim.modules.channel.errors import CalibrationError, ChannelError


@pytest.fixture
def radio():
    return RadioConfig()


@pytest.fixture
def grid():
    """Campaign grid: tx 2.5 m, rx 1 m, 5 to 25 m apart."""
    return geometry_grid(CalibrationGridConfig())


class TestCalibration:
    """Median additional loss over the campaign grid."""

    @pytest.mark.parametrize(("kind", "target"), [(SurfaceKind.CONCRETE, 4.5), (SurfaceKind.GRAVEL, 4.8)])
    def test_reproduces_measured_median(self, radio, grid, kind, target):
        surface = calibrate_surface(radio, grid, target, kind=kind)
        assert surface.kind is kind
        assert median_additional_loss_db(radio, grid, surface) == pytest.approx(target, abs=0.05)

    def test_concrete_reflection_loss(self, radio, grid):
        """The 15 m geometry is the median; its spreading excess is 0.187 dB."""
        surface = calibrate_surface(radio, grid, 4.5)
        assert surface.reflection_loss_db == pytest.approx(4.313, abs=0.005)

    def test_gravel_is_lossier_than_concrete(self, radio, grid):
        concrete = calibrate_surface(radio, grid, 4.5)
        gravel = calibrate_surface(radio, grid, 4.8)
        assert gravel.reflection_loss_db == pytest.approx(concrete.reflection_loss_db + 0.3, abs=1e-6)

    def test_target_below_geometric_excess(self, radio, grid):
        """No surface can make the ground ray stronger than free space allows."""
        with pytest.raises(CalibrationError):
            calibrate_surface(radio, grid, 0.1)

    def test_empty_grid(self, radio):
        with pytest.raises(CalibrationError):
            calibrate_surface(radio, [], 4.5)

    def test_negative_reflection_loss(self):
        with pytest.raises(ChannelError):
            Surface(SurfaceKind.CUSTOM, -1.0)


class TestResolveSurface:
    """Scenario surfaces resolved to a reflection loss."""

    def test_preset_is_calibrated(self, radio):
        surface = resolve_surface(SurfaceConfig(kind=SurfaceKind.GRAVEL), radio)
        assert surface.kind is SurfaceKind.GRAVEL
        assert surface.reflection_loss_db == pytest.approx(4.613, abs=0.005)

    def test_explicit_loss_wins(self, radio):
        surface = resolve_surface(SurfaceConfig(kind=SurfaceKind.CONCRETE, reflection_loss_db=7.0), radio)
        assert surface.reflection_loss_db == 7.0

    def test_ceramic_tile_with_target(self, radio):
        surface = resolve_surface(SurfaceConfig(kind=SurfaceKind.CERAMIC_TILE, target_additional_loss_db=6.0), radio)
        assert surface.kind is SurfaceKind.CERAMIC_TILE
        assert surface.reflection_loss_db == pytest.approx(6.0 - 0.187, abs=0.005)

    def test_ceramic_tile_needs_a_figure(self):
        with pytest.raises(ValidationError):
            SurfaceConfig(kind=SurfaceKind.CERAMIC_TILE)

    def test_grid_needs_distances(self):
        with pytest.raises(ValidationError):
            CalibrationGridConfig(distances_m=[])
