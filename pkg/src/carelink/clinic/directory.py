"""Pharmacy lookup by proximity, behind a pluggable provider seam.

The default provider is a local fixture list; an HTTP provider conforms
to the same one-method interface so a real search service could slot in.
Distance is great-circle on a spherical Earth.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional, Protocol, Sequence

EARTH_RADIUS_KM = 6371.0


class EmptyDirectory(Exception):
    pass


class ProviderUnavailable(Exception):
    pass


@dataclass(frozen=True)
class PharmacyDirectoryEntry:
    pharmacy_id: str
    name: str
    latitude: float
    longitude: float

    def __post_init__(self):
        if not -90.0 <= self.latitude <= 90.0:
            raise ValueError(f"latitude out of range: {self.latitude}")
        if not -180.0 <= self.longitude <= 180.0:
            raise ValueError(f"longitude out of range: {self.longitude}")


def haversine_km(lat1: float, lon1: float, lat2: float, lon2: float) -> float:
    phi1, phi2 = math.radians(lat1), math.radians(lat2)
    dphi = math.radians(lat2 - lat1)
    dlam = math.radians(lon2 - lon1)
    a = math.sin(dphi / 2) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlam / 2) ** 2
    return 2 * EARTH_RADIUS_KM * math.asin(math.sqrt(a))


class DirectoryProvider(Protocol):
    def entries(self) -> Sequence[PharmacyDirectoryEntry]:
        ...


class LocalDirectory:
    def __init__(self, entries: Sequence[PharmacyDirectoryEntry]):
        self._entries = tuple(entries)

    def entries(self) -> tuple[PharmacyDirectoryEntry, ...]:
        return self._entries

    @classmethod
    def from_file(cls, path: str) -> "LocalDirectory":
        with open(path, "r", encoding="utf-8") as fh:
            rows = json.load(fh)
        return cls(tuple(PharmacyDirectoryEntry(**row) for row in rows))


class HttpDirectory:
    """Fetches the same entry shape from a remote endpoint."""

    def __init__(self, url: str, client=None):
        if client is None:
            import httpx

            client = httpx.Client()
        self._client = client
        self._url = url

    def entries(self) -> tuple[PharmacyDirectoryEntry, ...]:
        import httpx

        try:
            resp = self._client.get(self._url, timeout=5.0)
            resp.raise_for_status()
            rows = resp.json()
        except (httpx.HTTPError, ValueError) as exc:
            raise ProviderUnavailable(str(exc)) from exc
        return tuple(PharmacyDirectoryEntry(**row) for row in rows)


def find_nearest_pharmacy(
    lat: float,
    lon: float,
    provider: DirectoryProvider,
    fallback: Optional[DirectoryProvider] = None,
) -> PharmacyDirectoryEntry:
    """Closest entry; distance ties break on the smaller pharmacy_id."""
    try:
        entries = provider.entries()
    except ProviderUnavailable:
        if fallback is None:
            raise
        entries = fallback.entries()
    if not entries:
        raise EmptyDirectory()
    return min(
        entries,
        key=lambda e: (haversine_km(lat, lon, e.latitude, e.longitude), e.pharmacy_id),
    )
