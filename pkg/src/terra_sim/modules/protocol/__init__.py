from .baseline import baseline_step
from .models import Action, Activity, BeamCache, DiscoveryMode, ProtocolState, StateKind
from .ports import MeasurementPort, RssMatrixPort
from .schemas import ProtocolConfig, ProtocolSelector
from .service import discovery_cost, discovery_episodes
from .terra import discovery_candidates, initial_state, terra_step

__all__ = [
    "Action",
    "Activity",
    "BeamCache",
    "DiscoveryMode",
    "MeasurementPort",
    "ProtocolConfig",
    "ProtocolSelector",
    "ProtocolState",
    "RssMatrixPort",
    "StateKind",
    "baseline_step",
    "discovery_candidates",
    "discovery_cost",
    "discovery_episodes",
    "initial_state",
    "terra_step",
]
