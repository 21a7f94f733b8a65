from .atom import ATOM_NS, MalformedFeed, SYNC_NS, parse_feed, serialize_feed
from .cycle import CycleState, CycleSummary, HttpPeer, InProcessPeer, SyncPeer, run_day_cycle
from .feed import (
    ApplyResult,
    FeedEntry,
    InvalidCursor,
    OP_TOMBSTONE,
    OP_UPSERT,
    START_CURSOR,
    SyncFeed,
    apply_feed,
    format_cursor,
    generate_feed,
    parse_cursor,
)
from .store import ReplicaStore, StoredDoc, canonical_json

__all__ = [
    "ATOM_NS",
    "ApplyResult",
    "CycleState",
    "CycleSummary",
    "FeedEntry",
    "HttpPeer",
    "InProcessPeer",
    "InvalidCursor",
    "MalformedFeed",
    "OP_TOMBSTONE",
    "OP_UPSERT",
    "ReplicaStore",
    "START_CURSOR",
    "SYNC_NS",
    "StoredDoc",
    "SyncFeed",
    "SyncPeer",
    "apply_feed",
    "canonical_json",
    "format_cursor",
    "generate_feed",
    "parse_cursor",
    "parse_feed",
    "run_day_cycle",
    "serialize_feed",
]
