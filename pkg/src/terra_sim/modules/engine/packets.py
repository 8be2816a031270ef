from __future__ import annotations

from enum import Enum

from ..channel.schemas import RadioConfig


class PacketKind(str, Enum):
    DATA = "data"
    CONTROL = "control"


def packet_outcome(rss_dbm: float, radio: RadioConfig, kind: PacketKind) -> bool:
    """Step-function reception: success iff RSS reaches the floor plus the required SNR."""
    threshold = radio.data_threshold_dbm if kind is PacketKind.DATA else radio.ctrl_threshold_dbm
    return rss_dbm >= threshold
