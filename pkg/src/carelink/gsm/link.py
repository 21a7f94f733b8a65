"""Deterministic timing model of a GSM traffic channel.

The link is a timed bit pipe: TDMA framing fixes the clock (4.615 ms frames,
270.833 kbit/s gross across 8 timeslots), payloads are segmented into frames
at the configured slot allocation, lost frames are retransmitted
stop-and-wait, and disconnect windows stall traffic. Nothing here touches
the wall clock; simulated time comes in and goes out as plain seconds.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

from .cells import CellClass, CellKind, in_coverage_at
from .channel import Arfcn, Band

FRAME_DURATION_S = 0.004615
GROSS_RATE_BPS = 270833

#: A frame is retried at most this many times before the transfer aborts.
MAX_FRAME_ATTEMPTS = 10


@dataclass(frozen=True)
class TdmaClock:
    frame_duration_s: float = FRAME_DURATION_S
    gross_rate_bps: int = GROSS_RATE_BPS

    def __post_init__(self):
        if self.frame_duration_s != FRAME_DURATION_S or self.gross_rate_bps != GROSS_RATE_BPS:
            raise ValueError("TDMA constants are fixed by the air interface")


class ChannelRate(str, Enum):
    FULL = "Full"
    HALF = "Half"


@dataclass(frozen=True)
class LinkConfig:
    arfcn: Arfcn = Arfcn(62)
    band: Band = Band.GSM850_900
    cell: CellClass = field(default_factory=lambda: CellClass(CellKind.MACRO))
    distance_km: float = 5.0
    timeslots: int = 1
    rate: ChannelRate = ChannelRate.FULL
    loss_prob: float = 0.0
    disconnect_windows: tuple[tuple[float, float], ...] = ()
    rng_seed: int = 0

    def __post_init__(self):
        if not (1 <= self.timeslots <= 8):
            raise ValueError("timeslots must be within [1, 8]")
        if not (0.0 <= self.loss_prob <= 1.0):
            raise ValueError("loss_prob must be within [0, 1]")
        if self.distance_km < 0:
            raise ValueError("distance cannot be negative")
        for start, end in self.disconnect_windows:
            if end < start:
                raise ValueError(f"disconnect window ends before it starts: ({start}, {end})")

    @property
    def logical_channels(self) -> int:
        # half-rate doubles the channel count per slot
        return self.timeslots * (2 if self.rate is ChannelRate.HALF else 1)


@dataclass(frozen=True)
class Throughput:
    aggregate_bps: float
    per_channel_bps: float
    channels: int

    @property
    def aggregate_bps_floor(self) -> int:
        return int(self.aggregate_bps)

    @property
    def per_channel_bps_floor(self) -> int:
        return int(self.per_channel_bps)


def slot_throughput(cfg: LinkConfig) -> Throughput:
    """Shares of the 270833 bit/s gross rate for the allocated slots.

    Rates are kept exact (all the divisors are small, so the floats are)
    and the per-channel shares always sum back to the aggregate.
    """
    aggregate = GROSS_RATE_BPS * cfg.timeslots / 8
    channels = cfg.logical_channels
    return Throughput(
        aggregate_bps=aggregate,
        per_channel_bps=aggregate / channels,
        channels=channels,
    )


class OutOfCoverage(Exception):
    def __init__(self, distance_km: float, effective_range_km: float):
        super().__init__(
            f"distance {distance_km} km exceeds cell range {effective_range_km} km"
        )


class TransferFailed(Exception):
    def __init__(self, frame_index: int, attempts: int, at: float):
        self.frame_index = frame_index
        self.attempts = attempts
        self.at = at
        super().__init__(
            f"frame {frame_index} dropped {attempts} times; giving up at t={at:.4f}"
        )


@dataclass(frozen=True)
class TransferResult:
    started_at: float
    delivered_at: float
    frames: int
    retransmissions: int

    @property
    def duration_s(self) -> float:
        return self.delivered_at - self.started_at


def _stall_past_disconnects(t: float, windows: Sequence[tuple[float, float]]) -> float:
    moved = True
    while moved:
        moved = False
        for start, end in windows:
            if t < end and start < t + FRAME_DURATION_S:
                t = end
                moved = True
    return t


def transfer_frame_count(payload_bytes: int, cfg: LinkConfig) -> int:
    bits_per_frame = slot_throughput(cfg).per_channel_bps * FRAME_DURATION_S
    return math.ceil(payload_bytes * 8 / bits_per_frame)


def simulate_transfer(
    payload_bytes: int,
    cfg: LinkConfig,
    start_t: float = 0.0,
    rng: Optional[random.Random] = None,
) -> TransferResult:
    """Time one payload across the link, frame by frame.

    Each frame costs one frame duration per attempt, losses are drawn from
    the seeded RNG, and a frame that cannot get through in
    MAX_FRAME_ATTEMPTS tries aborts the whole transfer. Raises OutOfCoverage
    before any air time is spent if the receiver is beyond the cell.
    """
    if payload_bytes <= 0:
        raise ValueError("payload must be at least one byte")
    if not in_coverage_at(cfg.cell, cfg.distance_km):
        raise OutOfCoverage(cfg.distance_km, cfg.cell.effective_range_km)

    n_frames = transfer_frame_count(payload_bytes, cfg)

    if cfg.loss_prob == 0.0 and not cfg.disconnect_windows:
        # every frame goes through first try, back to back
        return TransferResult(
            started_at=start_t,
            delivered_at=start_t + n_frames * FRAME_DURATION_S,
            frames=n_frames,
            retransmissions=0,
        )

    if rng is None:
        rng = random.Random(cfg.rng_seed)

    t = start_t
    retransmissions = 0
    for frame_index in range(n_frames):
        attempts = 0
        while True:
            t = _stall_past_disconnects(t, cfg.disconnect_windows)
            attempts += 1
            lost = cfg.loss_prob > 0.0 and rng.random() < cfg.loss_prob
            t += FRAME_DURATION_S
            if not lost:
                break
            retransmissions += 1
            if attempts >= MAX_FRAME_ATTEMPTS:
                raise TransferFailed(frame_index, attempts, t)
    return TransferResult(
        started_at=start_t,
        delivered_at=t,
        frames=n_frames,
        retransmissions=retransmissions,
    )


class GsmLink:
    """A channel with its own RNG stream, for sequences of transfers.

    Repeated transfers draw losses from one seeded stream, so a whole run
    is reproducible from (config, seed) while individual transfers still
    see independent loss patterns.
    """

    def __init__(self, cfg: LinkConfig):
        self.cfg = cfg
        self._rng = random.Random(cfg.rng_seed)

    def transfer(self, payload_bytes: int, start_t: float = 0.0) -> TransferResult:
        return simulate_transfer(payload_bytes, self.cfg, start_t, rng=self._rng)

    def reset(self) -> None:
        self._rng = random.Random(self.cfg.rng_seed)


def link_config_from_dict(raw: dict) -> LinkConfig:
    """Build a LinkConfig from the documented config-file fields.

    Unknown keys are rejected so typos fail loudly.
    """
    known = {
        "arfcn",
        "band",
        "cell",
        "distance_km",
        "timeslots",
        "rate",
        "loss_prob",
        "disconnect_windows",
        "rng_seed",
    }
    unknown = set(raw) - known
    if unknown:
        raise ValueError(f"unknown link config keys: {sorted(unknown)}")

    cell_raw = raw.get("cell", {})
    cell = CellClass(
        kind=CellKind(cell_raw.get("kind", "Macro")),
        max_range_km=float(cell_raw.get("max_range_km", 0.0)),
        extended=bool(cell_raw.get("extended", False)),
    )
    return LinkConfig(
        arfcn=Arfcn(int(raw.get("arfcn", 62))),
        band=Band(raw.get("band", "GSM850_900")),
        cell=cell,
        distance_km=float(raw.get("distance_km", 5.0)),
        timeslots=int(raw.get("timeslots", 1)),
        rate=ChannelRate(raw.get("rate", "Full")),
        loss_prob=float(raw.get("loss_prob", 0.0)),
        disconnect_windows=tuple(
            (float(s), float(e)) for s, e in raw.get("disconnect_windows", [])
        ),
        rng_seed=int(raw.get("rng_seed", 0)),
    )


def load_link_config(path: str) -> LinkConfig:
    """Read the `link` section of a JSON config file (or a bare object)."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    section = data.get("link", data) if isinstance(data, dict) else data
    if not isinstance(section, dict):
        raise ValueError("link config must be a JSON object")
    return link_config_from_dict(section)
