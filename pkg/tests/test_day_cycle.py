"""Morning pull / evening push between an offline device and a server."""

from datetime import datetime, timezone

import pytest

from carelink.gsm import GsmLink, TransferFailed
from carelink.gsm.link import LinkConfig
from carelink.sync import CycleState, InProcessPeer, ReplicaStore, run_day_cycle

T = datetime(2026, 3, 2, tzinfo=timezone.utc)


def fixed():
    return T


def make_pair():
    server = ReplicaStore("server", clock=fixed)
    device = ReplicaStore("device", clock=fixed)
    return device, server, InProcessPeer(server), CycleState()


def test_device_only_edits_end_up_on_the_server():
    device, server, peer, state = make_pair()
    device.put("rx-1", "Prescription", {"status": "Received"})
    device.put("note-1", "ClinicalNote", {"body": "bp ok"})
    summary = run_day_cycle(device, peer, state)
    assert summary.pulled_entries == 0
    assert summary.pushed_entries == 2
    assert summary.remote_result["applied"] == 2
    assert server.snapshot_bytes() == device.snapshot_bytes()


def test_disjoint_edits_union_on_both_sides():
    device, server, peer, state = make_pair()
    server.put("srv-1", "Appointment", {"at": "9:00"})
    device.put("dev-1", "Prescription", {"status": "Received"})
    run_day_cycle(device, peer, state)
    assert device.get("srv-1") == {"at": "9:00"}
    assert server.get("dev-1") == {"status": "Received"}
    assert server.snapshot_bytes() == device.snapshot_bytes()


def test_no_edits_means_empty_legs():
    device, _, peer, state = make_pair()
    summary = run_day_cycle(device, peer, state)
    assert summary.pulled_entries == 0
    assert summary.pushed_entries == 0
    assert summary.remote_result == {"applied": 0, "skipped": 0, "conflicts": []}


def test_second_cycle_with_no_new_edits_moves_nothing():
    device, server, peer, state = make_pair()
    server.put("a", "Prescription", {})
    device.put("b", "Prescription", {})
    run_day_cycle(device, peer, state)
    summary = run_day_cycle(device, peer, state)
    assert summary.pulled_entries == 0
    assert summary.pushed_entries == 0


def test_cursors_advance_only_when_entries_flow():
    device, server, peer, state = make_pair()
    run_day_cycle(device, peer, state)
    assert state.pull_cursor == "start"
    assert state.push_cursor == "start"
    server.put("a", "Prescription", {})
    run_day_cycle(device, peer, state)
    assert state.pull_cursor == "1:server"
    # the pulled entry is re-pushed once: the server skips it as stale
    assert state.push_cursor == "1:server"


def test_conflicting_edit_resolves_the_same_way_everywhere():
    device, server, peer, state = make_pair()
    device.put("rx", "Prescription", {"who": "device"})   # 1@device
    server.put("rx", "Prescription", {"who": "server"})   # 1@server
    run_day_cycle(device, peer, state)
    # 1@server > 1@device lexicographically, so the server's copy wins on
    # the device; the push of the stale device copy is skipped server-side
    assert device.get("rx") == {"who": "server"}
    assert server.get("rx") == {"who": "server"}
    assert server.snapshot_bytes() == device.snapshot_bytes()


def test_failed_pull_leaves_cursors_untouched():
    device, server, peer, state = make_pair()
    server.put("a", "Prescription", {})
    dead_link = GsmLink(LinkConfig(loss_prob=1.0))
    with pytest.raises(TransferFailed):
        run_day_cycle(device, peer, state, link=dead_link)
    assert state.pull_cursor == "start"
    assert state.push_cursor == "start"
    assert device.get("a") is None  # nothing half-applied
    # connectivity restored: the retry finishes the job
    run_day_cycle(device, peer, state)
    assert device.get("a") == {}


def test_link_timing_accumulates_across_both_legs():
    device, server, peer, state = make_pair()
    server.put("a", "Prescription", {"x": 1})
    device.put("b", "Prescription", {"y": 2})
    link = GsmLink(LinkConfig())
    summary = run_day_cycle(device, peer, state, link=link)
    assert summary.transfer_s > 0.0
    # two legs, each at least one frame
    assert summary.transfer_s >= 2 * 0.004615


def test_repeated_cycles_converge_with_ongoing_edits():
    device, server, peer, state = make_pair()
    for day in range(5):
        device.put(f"dev-{day}", "Prescription", {"day": day})
        server.put(f"srv-{day}", "Appointment", {"day": day})
        run_day_cycle(device, peer, state)
    assert server.snapshot_bytes() == device.snapshot_bytes()
    assert len(device.live_docs()) == 10
