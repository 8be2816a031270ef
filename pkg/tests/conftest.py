import pytest

from terra_sim.core.config import reset_settings
from terra_sim.modules.codebook.service import default_codebook
from terra_sim.modules.engine.loader import load_scenario
from terra_sim.modules.geometry.models import LinkGeometry


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch, tmp_path):
    """Keep TERRA_* settings from the developer shell out of the tests."""
    monkeypatch.setenv("TERRA_OUTPUT_DIR", str(tmp_path / "out"))
    monkeypatch.setenv("TERRA_WORKERS", "1")
    monkeypatch.delenv("TERRA_OTEL_EXPORTER_OTLP_ENDPOINT", raising=False)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def campaign_geometry():
    """Transmitter at 2 m, receiver at 1 m, 6 m apart."""
    return LinkGeometry.from_heights(2.0, 1.0, 6.0)


@pytest.fixture
def codebook():
    return default_codebook()


@pytest.fixture
def single_crossing():
    """One pedestrian crossing 2 m from the receiver at t = 1 s."""
    return load_scenario("single-crossing")
