"""Closed-loop submission experiment over the simulated deployment.

Each grid cell gets a fresh world and replays the same story: a
physician submits prescriptions with m medicines at a fixed rate for a
window of simulated seconds, and we record the send-to-acknowledgement
latency of every completed submission. A single fill-desk worker at the
pharmacy is the queue that makes latency grow with the arrival rate;
message size makes it grow with the medicine count.
"""

from __future__ import annotations

import math
import random
import statistics
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Optional

from ..domain.model import Medicine
from ..gsm.link import LinkConfig, TransferFailed
from ..world import build_world, demo_secret

#: frozen wall clock for bench worlds: document timestamps must not vary
#: between submissions, or their serialized size (and so their air time)
#: would wobble with the host clock
_BENCH_EPOCH = datetime(2026, 1, 1, tzinfo=timezone.utc)


class ServiceUnavailable(Exception):
    pass


class EmptyInput(Exception):
    pass


@dataclass(frozen=True)
class ExperimentSpec:
    rates: tuple[float, ...]
    medicine_counts: tuple[int, ...]
    window_s: float = 30.0
    link: Optional[LinkConfig] = None
    base_service_ms: float = 5.0
    per_medicine_cost_ms: float = 5.0
    seed: int = 0
    poisson: bool = False
    #: a floor on completed submissions per cell; low rates extend their
    #: window until they reach it, so percentiles stay meaningful
    min_samples: int = 0

    def __post_init__(self):
        if not self.rates or any(r <= 0 for r in self.rates):
            raise ValueError("rates must be positive")
        if not self.medicine_counts or any(m < 1 for m in self.medicine_counts):
            raise ValueError("medicine counts must be at least 1")
        if self.window_s <= 0:
            raise ValueError("window must be positive")


@dataclass(frozen=True)
class LatencySample:
    rate: float
    medicines: int
    n: int
    mean_latency_s: float
    p95_latency_s: float

    def __post_init__(self):
        if self.n <= 0:
            raise ValueError("a reported cell needs at least one sample")


@dataclass
class CellAccount:
    """Conservation bookkeeping: submitted = completed + failed + in_flight."""

    submitted: int = 0
    completed: int = 0
    failed: int = 0
    in_flight: int = 0
    latencies: list = field(default_factory=list)


def p95(latencies: list) -> float:
    ordered = sorted(latencies)
    rank = math.ceil(0.95 * len(ordered))
    return ordered[rank - 1]


def _arrivals(rate: float, window_s: float, min_samples: int, rng: random.Random, poisson: bool):
    t, k = 0.0, 0
    while t < window_s or k < min_samples:
        yield t
        k += 1
        t += rng.expovariate(rate) if poisson else 1.0 / rate


def run_cell(spec: ExperimentSpec, rate: float, medicines: int, cell_seed: int) -> CellAccount:
    link_cfg = spec.link or LinkConfig()
    world = build_world(
        seed=cell_seed,
        link_cfg=link_cfg,
        base_service_ms=spec.base_service_ms,
        per_medicine_ms=spec.per_medicine_cost_ms,
        clock=lambda: _BENCH_EPOCH,
    )
    try:
        world.registry.lookup("pharmacy.PH-CENTRAL")
    except Exception as exc:
        raise ServiceUnavailable(str(exc)) from exc
    token = world.login("dr-alice", demo_secret("dr-alice"))
    meds = [Medicine(f"med-{i}", "10mg", 1) for i in range(medicines)]
    rng = random.Random(cell_seed ^ 0x5EED)
    account = CellAccount()
    for sim_t in _arrivals(rate, spec.window_s, spec.min_samples, rng, spec.poisson):
        account.submitted += 1
        try:
            receipt = world.clinic.submit_prescription(
                token, "pat-patient", "PH-CENTRAL", meds, sim_t=sim_t
            )
        except TransferFailed:
            account.failed += 1
            continue
        account.completed += 1
        account.latencies.append(receipt.latency_s)
    return account


def run_experiment(spec: ExperimentSpec) -> list[LatencySample]:
    samples = []
    for i, rate in enumerate(sorted(spec.rates)):
        for j, medicines in enumerate(sorted(spec.medicine_counts)):
            cell_seed = spec.seed * 7919 + i * 101 + j
            account = run_cell(spec, rate, medicines, cell_seed)
            if not account.latencies:
                continue
            samples.append(
                LatencySample(
                    rate=rate,
                    medicines=medicines,
                    n=account.completed,
                    mean_latency_s=statistics.fmean(account.latencies),
                    p95_latency_s=p95(account.latencies),
                )
            )
    return samples


def summarize(samples: list, format: str = "csv") -> str:
    if not samples:
        raise EmptyInput("no samples to summarize")
    rows = sorted(samples, key=lambda s: (s.rate, s.medicines))
    if format == "csv":
        lines = ["rate,medicines,n,mean_latency_s,p95_latency_s"]
        for s in rows:
            lines.append(
                f"{s.rate:g},{s.medicines},{s.n},{s.mean_latency_s:.6f},{s.p95_latency_s:.6f}"
            )
        return "\n".join(lines) + "\n"
    if format == "table":
        header = f"{'rate':>8} {'med':>4} {'n':>6} {'mean_s':>10} {'p95_s':>10}"
        lines = [header, "-" * len(header)]
        for s in rows:
            lines.append(
                f"{s.rate:>8g} {s.medicines:>4} {s.n:>6}"
                f" {s.mean_latency_s:>10.6f} {s.p95_latency_s:>10.6f}"
            )
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format: {format}")


def monotonicity_violations(samples: list) -> tuple[int, int]:
    """Adjacent-pair violations along both grid axes, and the pair count."""
    by_cell = {(s.rate, s.medicines): s.mean_latency_s for s in samples}
    rates = sorted({s.rate for s in samples})
    meds = sorted({s.medicines for s in samples})
    violations = total = 0
    eps = 1e-12
    for m in meds:
        for a, b in zip(rates, rates[1:]):
            if (a, m) in by_cell and (b, m) in by_cell:
                total += 1
                if by_cell[(b, m)] < by_cell[(a, m)] - eps:
                    violations += 1
    for r in rates:
        for a, b in zip(meds, meds[1:]):
            if (r, a) in by_cell and (r, b) in by_cell:
                total += 1
                if by_cell[(r, b)] < by_cell[(r, a)] - eps:
                    violations += 1
    return violations, total


def check_monotone(samples: list, tolerance: float = 0.02) -> bool:
    violations, total = monotonicity_violations(samples)
    return total == 0 or violations / total <= tolerance
