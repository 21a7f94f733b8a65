"""Versioned replica of resource documents with last-writer-wins merge.

Every node (clinic server, pharmacy server, offline device) holds one.
Versions are (Lamport clock, node id) pairs compared lexicographically;
a remote entry lands only if its version is strictly higher. Tombstones
stay forever so deletes win over stale upserts.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, replace
from datetime import datetime
from typing import Optional

from ..timeutil import Clock, to_rfc3339, utc_now
from ..versioning import GENESIS, Version


def canonical_json(doc) -> str:
    """One byte form per document; drives convergence comparison."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


@dataclass(frozen=True)
class StoredDoc:
    resource_id: str
    kind: str
    version: Version
    deleted: bool
    content: Optional[dict]  # None exactly when deleted
    updated_at: datetime

    def __post_init__(self):
        if self.deleted != (self.content is None):
            raise ValueError("tombstones carry no content; live docs must")


class ReplicaStore:
    """One logical writer; feed application excludes local writes."""

    def __init__(self, node_id: str, clock: Clock = utc_now):
        if not node_id:
            raise ValueError("node_id must be non-empty")
        self.node_id = node_id
        self._wall = clock
        self._clock = 0  # Lamport counter, merges on receive
        self._docs: dict[str, StoredDoc] = {}
        self._lock = threading.RLock()

    def _next_version(self) -> Version:
        self._clock += 1
        return Version(self._clock, self.node_id)

    def put(self, resource_id: str, kind: str, content: dict, now: Optional[datetime] = None) -> Version:
        if not isinstance(content, dict):
            raise TypeError("content must be a document")
        with self._lock:
            version = self._next_version()
            self._docs[resource_id] = StoredDoc(
                resource_id, kind, version, False, content, now or self._wall()
            )
            return version

    def delete(self, resource_id: str, kind: str = "", now: Optional[datetime] = None) -> Version:
        with self._lock:
            prior = self._docs.get(resource_id)
            version = self._next_version()
            self._docs[resource_id] = StoredDoc(
                resource_id,
                kind or (prior.kind if prior else "unknown"),
                version,
                True,
                None,
                now or self._wall(),
            )
            return version

    def get(self, resource_id: str) -> Optional[dict]:
        with self._lock:
            doc = self._docs.get(resource_id)
        if doc is None or doc.deleted:
            return None
        return doc.content

    def get_version(self, resource_id: str) -> Version:
        with self._lock:
            doc = self._docs.get(resource_id)
        return doc.version if doc else GENESIS

    def peek(self, resource_id: str) -> Optional[StoredDoc]:
        """The stored row itself, tombstone or live."""
        with self._lock:
            return self._docs.get(resource_id)

    def live_docs(self, kind: Optional[str] = None) -> list[StoredDoc]:
        with self._lock:
            docs = [d for d in self._docs.values() if not d.deleted]
        if kind is not None:
            docs = [d for d in docs if d.kind == kind]
        return sorted(docs, key=lambda d: d.resource_id)

    def changes_since(self, cursor: Version) -> list[StoredDoc]:
        """Everything strictly after the cursor, in version order."""
        with self._lock:
            docs = [d for d in self._docs.values() if d.version > cursor]
        return sorted(docs, key=lambda d: d.version)

    def latest_version(self) -> Version:
        with self._lock:
            if not self._docs:
                return GENESIS
            return max(d.version for d in self._docs.values())

    def observe(self, version: Version) -> None:
        """Lamport receive rule: local clock absorbs the incoming one."""
        with self._lock:
            self._clock = max(self._clock, version.clock)

    def apply_remote(self, doc: StoredDoc) -> bool:
        """LWW: land the doc iff its version beats the stored one."""
        with self._lock:
            self.observe(doc.version)
            current = self._docs.get(doc.resource_id)
            if current is not None and doc.version <= current.version:
                return False
            self._docs[doc.resource_id] = replace(doc)
            return True

    def snapshot_bytes(self) -> bytes:
        """Node-independent content image; equal bytes mean converged."""
        with self._lock:
            rows = [
                {
                    "id": d.resource_id,
                    "kind": d.kind,
                    "version": [d.version.clock, d.version.node],
                    "deleted": d.deleted,
                    "content": d.content,
                    "updated": to_rfc3339(d.updated_at),
                }
                for d in sorted(self._docs.values(), key=lambda d: d.resource_id)
            ]
        return canonical_json(rows).encode("utf-8")
