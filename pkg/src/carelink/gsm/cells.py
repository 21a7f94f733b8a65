"""Cell coverage tiers, from 35 km macro cells down to indoor pico cells."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

#: Practical reach of a non-extended cell, km.
MAX_BASE_RANGE_KM = 35.0

#: An extended cell at most doubles the base radius here.
EXTENDED_FACTOR = 2.0


class CellKind(str, Enum):
    MACRO = "Macro"
    MICRO = "Micro"
    PICO = "Pico"
    FEMTO = "Femto"
    UMBRELLA = "Umbrella"


#: Default radii, km. Pico is "a few dozen meters"; the rest are
#: configurable deployment defaults.
DEFAULT_RANGE_KM = {
    CellKind.MACRO: 35.0,
    CellKind.MICRO: 2.0,
    CellKind.PICO: 0.05,
    CellKind.FEMTO: 0.03,
    CellKind.UMBRELLA: 35.0,
}


@dataclass(frozen=True)
class CellClass:
    kind: CellKind
    max_range_km: float = 0.0
    extended: bool = False

    def __post_init__(self):
        if self.max_range_km == 0.0:
            object.__setattr__(self, "max_range_km", DEFAULT_RANGE_KM[self.kind])
        if self.max_range_km <= 0:
            raise ValueError("cell range must be positive")
        if self.max_range_km > MAX_BASE_RANGE_KM:
            raise ValueError(f"base cell range capped at {MAX_BASE_RANGE_KM} km")

    @property
    def effective_range_km(self) -> float:
        return self.max_range_km * (EXTENDED_FACTOR if self.extended else 1.0)


def in_coverage_at(cell: CellClass, distance_km: float) -> bool:
    if distance_km < 0:
        raise ValueError("distance cannot be negative")
    return distance_km <= cell.effective_range_km


def in_coverage(cfg) -> bool:
    """True when the configured distance is inside the cell's reach."""
    return in_coverage_at(cfg.cell, cfg.distance_km)
