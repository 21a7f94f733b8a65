"""Change feeds between replica stores: generation, cursors, application."""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime
from typing import Optional

from ..timeutil import utc_now
from ..versioning import GENESIS, Version
from .store import ReplicaStore, StoredDoc

START_CURSOR = "start"

OP_UPSERT = "upsert"
OP_TOMBSTONE = "tombstone"


class InvalidCursor(Exception):
    pass


def format_cursor(version: Version) -> str:
    return f"{version.clock}:{version.node}"


def parse_cursor(cursor: str) -> Version:
    if cursor == START_CURSOR:
        return GENESIS
    clock, sep, node = cursor.partition(":")
    if not sep:
        raise InvalidCursor(cursor)
    try:
        n = int(clock)
    except ValueError:
        raise InvalidCursor(cursor) from None
    if n < 0:
        raise InvalidCursor(cursor)
    return Version(n, node)


@dataclass(frozen=True)
class FeedEntry:
    entry_id: str
    version: Version
    kind: str
    op: str  # OP_UPSERT | OP_TOMBSTONE
    updated_at: datetime
    content: Optional[dict]

    def __post_init__(self):
        if self.op not in (OP_UPSERT, OP_TOMBSTONE):
            raise ValueError(f"unknown op: {self.op}")
        if (self.op == OP_TOMBSTONE) != (self.content is None):
            raise ValueError("tombstone entries carry no content; upserts must")


@dataclass(frozen=True)
class SyncFeed:
    feed_id: str
    source_node: str
    cursor: str  # position after consuming every entry here
    updated_at: datetime
    entries: tuple[FeedEntry, ...] = ()

    def __post_init__(self):
        versions = [e.version for e in self.entries]
        if versions != sorted(versions):
            raise ValueError("feed entries must be sorted by version")
        if len({(e.entry_id, e.version) for e in self.entries}) != len(self.entries):
            raise ValueError("duplicate (entry_id, version) in feed")


@dataclass
class ApplyResult:
    applied: int = 0
    skipped: int = 0
    conflicts: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"applied": self.applied, "skipped": self.skipped, "conflicts": self.conflicts}


def feed_id_for(node: str) -> str:
    return f"urn:carelink:feed:{node}"


def generate_feed(store: ReplicaStore, since: str, now: Optional[datetime] = None) -> SyncFeed:
    """Everything after the cursor; the feed's own cursor is where the
    consumer should resume, which never moves backwards."""
    cursor_version = parse_cursor(since)
    changes = store.changes_since(cursor_version)
    entries = tuple(
        FeedEntry(
            entry_id=d.resource_id,
            version=d.version,
            kind=d.kind,
            op=OP_TOMBSTONE if d.deleted else OP_UPSERT,
            updated_at=d.updated_at,
            content=d.content,
        )
        for d in changes
    )
    next_cursor = format_cursor(changes[-1].version) if changes else since
    return SyncFeed(
        feed_id=feed_id_for(store.node_id),
        source_node=store.node_id,
        cursor=next_cursor,
        updated_at=now or utc_now(),
        entries=entries,
    )


def apply_feed(store: ReplicaStore, feed: SyncFeed) -> ApplyResult:
    """Per-entry last-writer-wins. Order-independent across distinct ids.

    A conflict here means an entry overwrote live content written by a
    different node; it is an audit trail, not an error.
    """
    result = ApplyResult()
    for entry in feed.entries:
        prior = store.peek(entry.entry_id)
        doc = StoredDoc(
            resource_id=entry.entry_id,
            kind=entry.kind,
            version=entry.version,
            deleted=entry.op == OP_TOMBSTONE,
            content=entry.content,
            updated_at=entry.updated_at,
        )
        if store.apply_remote(doc):
            result.applied += 1
            if prior is not None and not prior.deleted and prior.version.node != entry.version.node:
                result.conflicts.append(entry.entry_id)
        else:
            result.skipped += 1
    return result
