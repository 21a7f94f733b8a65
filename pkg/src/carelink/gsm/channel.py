"""The GSM-900 channel plan: ARFCN arithmetic and power limits.

Uplink carriers sit at 890 + 0.2*n MHz inside 890..915, downlink 45 MHz
above inside 935..960, for channel numbers 1..124 spaced 200 kHz apart.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

ARFCN_MIN = 1
ARFCN_MAX = 124

UPLINK_BASE_MHZ = 890.0
CHANNEL_SPACING_MHZ = 0.2
DUPLEX_SPACING_MHZ = 45.0

UPLINK_BAND_MHZ = (890.0, 915.0)
DOWNLINK_BAND_MHZ = (935.0, 960.0)


class InvalidChannel(Exception):
    def __init__(self, n: int):
        self.n = n
        super().__init__(f"channel number {n} outside [{ARFCN_MIN}, {ARFCN_MAX}]")


@dataclass(frozen=True)
class Arfcn:
    """Absolute radio-frequency channel number."""

    n: int

    def __post_init__(self):
        if not (ARFCN_MIN <= self.n <= ARFCN_MAX):
            raise InvalidChannel(self.n)


class Band(str, Enum):
    GSM850_900 = "GSM850_900"
    GSM1800_1900 = "GSM1800_1900"


#: Handset transmit power caps, watts.
TX_POWER_LIMIT_W = {
    Band.GSM850_900: 2.0,
    Band.GSM1800_1900: 1.0,
}


def arfcn_to_frequencies(a: Arfcn) -> tuple[float, float]:
    """(uplink MHz, downlink MHz) for a channel; duplex spacing is fixed."""
    uplink = UPLINK_BASE_MHZ + CHANNEL_SPACING_MHZ * a.n
    return uplink, uplink + DUPLEX_SPACING_MHZ


def tx_power_limit(band: Band) -> float:
    return TX_POWER_LIMIT_W[band]
