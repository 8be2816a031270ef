"""Queries over the protocol action log."""

from __future__ import annotations

from typing import Sequence

from .models import Action, DiscoveryMode, StateKind

_EPISODE_STARTS = {f"{mode.value}_start": mode for mode in DiscoveryMode}


def discovery_episodes(log: Sequence[Action]) -> list[tuple[DiscoveryMode, int]]:
    """(mode, measurement count) for every ground-reflection discovery episode."""
    episodes: list[tuple[DiscoveryMode, int]] = []
    for action in log:
        mode = _EPISODE_STARTS.get(action.event)
        if mode is not None:
            episodes.append((mode, 0))
        elif (
            action.event == "measure"
            and episodes
            and action.state.startswith(StateKind.GROUND_DISCOVERY.value)
        ):
            current_mode, count = episodes[-1]
            episodes[-1] = (current_mode, count + 1)
    return episodes


def discovery_cost(log: Sequence[Action]) -> int:
    """Measurements spent by the last discovery episode; 0 when there was none."""
    episodes = discovery_episodes(log)
    return episodes[-1][1] if episodes else 0
