"""Feed generation, cursors, and conflict reporting."""

import itertools
from datetime import datetime, timezone

import pytest

from carelink.sync import (
    FeedEntry,
    InvalidCursor,
    OP_TOMBSTONE,
    OP_UPSERT,
    ReplicaStore,
    START_CURSOR,
    SyncFeed,
    apply_feed,
    format_cursor,
    generate_feed,
    parse_cursor,
)
from carelink.versioning import GENESIS, Version

T = datetime(2026, 3, 2, tzinfo=timezone.utc)


def fixed():
    return T


def entry(rid, clock, node, content=None, op=OP_UPSERT, kind="Prescription"):
    return FeedEntry(
        entry_id=rid,
        version=Version(clock, node),
        kind=kind,
        op=op,
        updated_at=T,
        content=None if op == OP_TOMBSTONE else (content or {"c": clock}),
    )


def feed_of(*entries, node="B"):
    ordered = tuple(sorted(entries, key=lambda e: e.version))
    cursor = format_cursor(ordered[-1].version) if ordered else START_CURSOR
    return SyncFeed(
        feed_id=f"urn:carelink:feed:{node}",
        source_node=node,
        cursor=cursor,
        updated_at=T,
        entries=ordered,
    )


def test_cursor_round_trip():
    v = Version(17, "pharmacy-PH-EAST")
    assert parse_cursor(format_cursor(v)) == v
    assert parse_cursor(START_CURSOR) == GENESIS


@pytest.mark.parametrize("bad", ["", "xyz", "-1:A", "1.5:A"])
def test_bad_cursors_rejected(bad):
    with pytest.raises(InvalidCursor):
        parse_cursor(bad)


def test_full_history_from_start():
    s = ReplicaStore("A", clock=fixed)
    s.put("r1", "Prescription", {})
    s.put("r2", "Prescription", {})
    s.put("r3", "Appointment", {})
    f = generate_feed(s, START_CURSOR, now=T)
    assert len(f.entries) == 3
    assert f.feed_id == "urn:carelink:feed:A"


def test_feed_after_consuming_everything_is_empty():
    s = ReplicaStore("A", clock=fixed)
    for i in range(3):
        s.put(f"r{i}", "Prescription", {})
    first = generate_feed(s, START_CURSOR, now=T)
    second = generate_feed(s, first.cursor, now=T)
    assert second.entries == ()
    assert second.cursor == first.cursor  # cursor holds position, never regresses


def test_interleaved_node_edits_come_out_in_version_order():
    s = ReplicaStore("A", clock=fixed)
    s.put("r1", "Prescription", {})  # 1@A
    apply_feed(s, feed_of(entry("r2", 2, "B"), entry("r3", 3, "B")))
    s.put("r4", "Prescription", {})  # 4@A after observing 3
    f = generate_feed(s, START_CURSOR, now=T)
    versions = [e.version for e in f.entries]
    assert versions == sorted(versions)
    assert [e.entry_id for e in f.entries] == ["r1", "r2", "r3", "r4"]


def test_feed_carries_tombstones():
    s = ReplicaStore("A", clock=fixed)
    s.put("r1", "Prescription", {})
    s.delete("r1")
    f = generate_feed(s, START_CURSOR, now=T)
    assert f.entries[-1].op == OP_TOMBSTONE
    assert f.entries[-1].content is None


def test_apply_twice_is_a_no_op():
    s = ReplicaStore("local", clock=fixed)
    f = feed_of(entry("r1", 1, "B"), entry("r2", 2, "B"))
    first = apply_feed(s, f)
    assert (first.applied, first.skipped) == (2, 0)
    second = apply_feed(s, f)
    assert (second.applied, second.skipped) == (0, 2)


def test_lww_across_feeds():
    s = ReplicaStore("local", clock=fixed)
    apply_feed(s, feed_of(entry("rx", 5, "A", {"who": "A"}), node="A"))
    apply_feed(s, feed_of(entry("rx", 7, "B", {"who": "B"}), node="B"))
    assert s.get("rx") == {"who": "B"}
    # stale update later: skipped
    result = apply_feed(s, feed_of(entry("rx", 6, "A", {"who": "A2"}), node="A"))
    assert result.skipped == 1
    assert s.get("rx") == {"who": "B"}


def test_equal_clock_feeds_tie_break_to_higher_node():
    s = ReplicaStore("local", clock=fixed)
    apply_feed(s, feed_of(entry("rx", 5, "A", {"who": "A"}), node="A"))
    apply_feed(s, feed_of(entry("rx", 5, "B", {"who": "B"}), node="B"))
    assert s.get("rx") == {"who": "B"}


def test_conflicts_reported_when_live_content_is_overwritten_cross_node():
    s = ReplicaStore("local", clock=fixed)
    s.put("rx", "Prescription", {"who": "local"})  # 1@local, live
    result = apply_feed(s, feed_of(entry("rx", 9, "B", {"who": "B"})))
    assert result.applied == 1
    assert result.conflicts == ["rx"]


def test_no_conflict_for_fresh_resources_or_same_node():
    s = ReplicaStore("local", clock=fixed)
    result = apply_feed(s, feed_of(entry("new", 3, "B")))
    assert result.conflicts == []
    follow = apply_feed(s, feed_of(entry("new", 4, "B")))
    assert follow.conflicts == []  # same writer continuing its own history


def test_permuting_distinct_ids_converges_identically():
    entries = [entry("r1", 1, "B"), entry("r2", 2, "B"), entry("r3", 3, "B")]
    snapshots = set()
    for perm in itertools.permutations(entries):
        s = ReplicaStore("local", clock=fixed)
        for e in perm:
            apply_feed(s, feed_of(e))
        snapshots.add(s.snapshot_bytes())
    assert len(snapshots) == 1


def test_feed_validation():
    with pytest.raises(ValueError):
        SyncFeed(
            feed_id="f",
            source_node="B",
            cursor=START_CURSOR,
            updated_at=T,
            entries=(entry("r2", 2, "B"), entry("r1", 1, "B")),  # unsorted
        )
    with pytest.raises(ValueError):
        SyncFeed(
            feed_id="f",
            source_node="B",
            cursor=START_CURSOR,
            updated_at=T,
            entries=(entry("r1", 1, "B"), entry("r1", 1, "B")),  # dup (id, version)
        )
    with pytest.raises(ValueError):
        entry("r1", 1, "B", op="replace")
    with pytest.raises(ValueError):
        FeedEntry("r1", Version(1, "B"), "k", OP_TOMBSTONE, T, {"x": 1})


def test_replaying_from_an_old_cursor_never_regresses_versions():
    s = ReplicaStore("A", clock=fixed)
    for i in range(5):
        s.put("rx", "Prescription", {"i": i})
    consumer = ReplicaStore("C", clock=fixed)
    apply_feed(consumer, generate_feed(s, START_CURSOR, now=T))
    high = consumer.get_version("rx")
    # replay from the beginning: everything is stale, nothing moves back
    result = apply_feed(consumer, generate_feed(s, START_CURSOR, now=T))
    assert result.applied == 0
    assert consumer.get_version("rx") == high
