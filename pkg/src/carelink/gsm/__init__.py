from .cells import CellClass, CellKind, in_coverage
from .channel import Arfcn, Band, InvalidChannel, arfcn_to_frequencies, tx_power_limit
from .link import (
    FRAME_DURATION_S,
    GROSS_RATE_BPS,
    ChannelRate,
    GsmLink,
    LinkConfig,
    OutOfCoverage,
    Throughput,
    TransferFailed,
    TransferResult,
    link_config_from_dict,
    load_link_config,
    simulate_transfer,
    slot_throughput,
)

__all__ = [
    "Arfcn",
    "Band",
    "CellClass",
    "CellKind",
    "ChannelRate",
    "FRAME_DURATION_S",
    "GROSS_RATE_BPS",
    "GsmLink",
    "InvalidChannel",
    "LinkConfig",
    "OutOfCoverage",
    "Throughput",
    "TransferFailed",
    "TransferResult",
    "arfcn_to_frequencies",
    "in_coverage",
    "link_config_from_dict",
    "load_link_config",
    "simulate_transfer",
    "slot_throughput",
    "tx_power_limit",
]
