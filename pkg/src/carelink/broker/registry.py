"""Logical service names mapped to ordered endpoint lists.

One registry per deployment. Callers resolve names like "pharmacy.main"
or "store.HIS" and never see topology beyond the returned record.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass


class UnknownService(Exception):
    pass


class DuplicateEndpoint(Exception):
    pass


@dataclass(frozen=True)
class ServiceRecord:
    name: str
    endpoints: tuple[str, ...]  # primary first, replicas after
    version: int = 1

    def __post_init__(self):
        if not self.name:
            raise ValueError("service name must be non-empty")
        if not self.endpoints:
            raise ValueError("endpoints must be non-empty")


class ServiceRegistry:
    """Registrations are serialized; lookups return immutable records."""

    def __init__(self):
        self._records: dict[str, ServiceRecord] = {}
        self._lock = threading.Lock()

    def register(self, name: str, endpoint: str) -> ServiceRecord:
        with self._lock:
            rec = self._records.get(name)
            if rec is None:
                rec = ServiceRecord(name, (endpoint,), version=1)
            elif endpoint in rec.endpoints:
                raise DuplicateEndpoint(f"{endpoint} already registered for {name}")
            else:
                rec = ServiceRecord(name, rec.endpoints + (endpoint,), rec.version + 1)
            self._records[name] = rec
            return rec

    def withdraw(self, name: str, endpoint: str) -> None:
        """Remove one endpoint; dropping the last one removes the record."""
        with self._lock:
            rec = self._records.get(name)
            if rec is None or endpoint not in rec.endpoints:
                raise UnknownService(f"{name} @ {endpoint}")
            rest = tuple(e for e in rec.endpoints if e != endpoint)
            if rest:
                self._records[name] = ServiceRecord(name, rest, rec.version + 1)
            else:
                del self._records[name]

    def lookup(self, name: str) -> ServiceRecord:
        with self._lock:
            rec = self._records.get(name)
        if rec is None:
            raise UnknownService(name)
        return rec

    def names(self) -> list[str]:
        with self._lock:
            return sorted(self._records)


def dump_registry(registry: ServiceRegistry, path: str) -> None:
    """Snapshot for bootstrapping other nodes: name -> endpoint list."""
    doc = {"services": {n: list(registry.lookup(n).endpoints) for n in registry.names()}}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_registry(path: str) -> ServiceRegistry:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    services = doc.get("services")
    if not isinstance(services, dict):
        raise ValueError("registry snapshot must carry a 'services' object")
    registry = ServiceRegistry()
    for name, endpoints in services.items():
        for ep in endpoints:
            registry.register(name, ep)
    return registry
