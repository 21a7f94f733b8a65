"""Start-of-day pull and end-of-day push for offline device replicas.

Between the two legs the device works disconnected. A leg that cannot
move its feed over the link raises and leaves cursors untouched, so the
next boundary simply retries; entries land atomically or not at all.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Protocol

from ..gsm.link import GsmLink
from .atom import parse_feed, serialize_feed
from .feed import START_CURSOR, apply_feed, generate_feed
from .store import ReplicaStore


class SyncPeer(Protocol):
    """The server side as the device sees it."""

    def feed_since(self, cursor: str) -> bytes:
        ...

    def apply(self, feed_bytes: bytes) -> dict:
        ...


class InProcessPeer:
    def __init__(self, store: ReplicaStore):
        self._store = store

    def feed_since(self, cursor: str) -> bytes:
        return serialize_feed(generate_feed(self._store, cursor))

    def apply(self, feed_bytes: bytes) -> dict:
        return apply_feed(self._store, parse_feed(feed_bytes)).as_dict()


class HttpPeer:
    """Talks to a live node's sync endpoints."""

    def __init__(self, base_url: str, token: str, client=None):
        if client is None:
            import httpx

            client = httpx.Client()
        self._client = client
        self._base = base_url.rstrip("/")
        self._headers = {"Authorization": f"Bearer {token}"}

    def feed_since(self, cursor: str) -> bytes:
        resp = self._client.get(
            f"{self._base}/api/sync/feed", params={"since": cursor}, headers=self._headers
        )
        resp.raise_for_status()
        return resp.content

    def apply(self, feed_bytes: bytes) -> dict:
        resp = self._client.post(
            f"{self._base}/api/sync/apply",
            content=feed_bytes,
            headers={**self._headers, "Content-Type": "application/atom+xml"},
        )
        resp.raise_for_status()
        return resp.json()


@dataclass
class CycleState:
    """Where this device stands against one server."""

    pull_cursor: str = START_CURSOR
    push_cursor: str = START_CURSOR


@dataclass
class CycleSummary:
    pulled_entries: int = 0
    applied_local: int = 0
    conflicts_local: list = field(default_factory=list)
    pushed_entries: int = 0
    remote_result: dict = field(default_factory=dict)
    transfer_s: float = 0.0


def run_day_cycle(
    device_store: ReplicaStore,
    server: SyncPeer,
    state: CycleState,
    link: Optional[GsmLink] = None,
) -> CycleSummary:
    summary = CycleSummary()

    # morning: pull what the server accumulated overnight
    pulled = server.feed_since(state.pull_cursor)
    if link is not None:
        summary.transfer_s += link.transfer(len(pulled)).duration_s
    feed = parse_feed(pulled)
    result = apply_feed(device_store, feed)
    summary.pulled_entries = len(feed.entries)
    summary.applied_local = result.applied
    summary.conflicts_local = result.conflicts
    if feed.entries:
        state.pull_cursor = feed.cursor

    # evening: push the day's work
    out = generate_feed(device_store, state.push_cursor)
    payload = serialize_feed(out)
    if link is not None:
        summary.transfer_s += link.transfer(len(payload)).duration_s
    summary.remote_result = server.apply(payload)
    summary.pushed_entries = len(out.entries)
    if out.entries:
        state.push_cursor = out.cursor
    return summary
