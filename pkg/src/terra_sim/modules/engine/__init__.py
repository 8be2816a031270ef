from .batch import Comparison, PairedEvent, compare, pair_events, run_batch
from .loader import apply_override, bundled_scenarios, load_scenario
from .metrics import cdf, event_per, outage_fraction, outage_runs, verify_summary, within_margin_fraction
from .models import EventOutcome, RunResult, RunSummary, TickRecord
from .packets import PacketKind, packet_outcome
from .schemas import GeometryConfig, ScenarioConfig
from .service import drive_protocol, event_windows, run

__all__ = [
    "Comparison",
    "EventOutcome",
    "GeometryConfig",
    "PacketKind",
    "PairedEvent",
    "RunResult",
    "RunSummary",
    "ScenarioConfig",
    "TickRecord",
    "apply_override",
    "bundled_scenarios",
    "cdf",
    "compare",
    "drive_protocol",
    "event_per",
    "event_windows",
    "load_scenario",
    "outage_fraction",
    "outage_runs",
    "packet_outcome",
    "pair_events",
    "run",
    "run_batch",
    "verify_summary",
    "within_margin_fraction",
]
