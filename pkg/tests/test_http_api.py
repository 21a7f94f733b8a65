"""The HTTP fronts, driven through an in-process test client."""

import json

import pytest
from fastapi.testclient import TestClient

from carelink.broker.messages import BrokerMessage
from carelink.clinic.http import create_clinic_app
from carelink.domain.codec import prescription_to_doc
from carelink.pharmacy.http import create_pharmacy_app
from carelink.security.channel import SecureChannel
from carelink.sync.cycle import HttpPeer
from carelink.world import build_world, demo_secret
from conftest import fixed_clock

from test_pharmacy import make_rx


@pytest.fixture()
def clinic_client(world):
    with TestClient(create_clinic_app(world)) as client:
        yield client


@pytest.fixture()
def pharmacy_client(world):
    with TestClient(create_pharmacy_app(world, "PH-CENTRAL")) as client:
        yield client


def login(client, who):
    resp = client.post(
        "/api/login", json={"principal_id": who, "secret": demo_secret(who)}
    )
    assert resp.status_code == 200
    body = resp.json()
    assert set(body) == {"token"}
    return body["token"]


def auth(token):
    return {"Authorization": f"Bearer {token}"}


RX_BODY = {
    "patient_id": "pat-patient",
    "pharmacy_id": "PH-CENTRAL",
    "medicines": [{"name": "amoxicillin", "dosage": "500mg", "quantity": 20}],
}


# login and error conventions


def test_login_round_trip(clinic_client):
    token = login(clinic_client, "dr-alice")
    assert isinstance(token, str) and token


def test_wrong_secret_is_401(clinic_client):
    resp = clinic_client.post(
        "/api/login", json={"principal_id": "dr-alice", "secret": "nope"}
    )
    assert resp.status_code == 401
    body = resp.json()
    assert body["error_code"] == "BadCredentials"
    assert set(body) == {"error_code", "message"}


def test_missing_bearer_is_401(clinic_client):
    resp = clinic_client.get("/api/appointments")
    assert resp.status_code == 401
    assert resp.json()["error_code"] == "InvalidSession"


def test_garbage_token_is_401(clinic_client):
    resp = clinic_client.get("/api/appointments", headers=auth("not-a-token"))
    assert resp.status_code == 401
    assert resp.json()["error_code"] == "InvalidSession"


def test_cors_headers_are_present(clinic_client):
    resp = clinic_client.get(
        "/api/appointments",
        headers={"Origin": "http://localhost:5173", **auth(login(clinic_client, "dr-alice"))},
    )
    assert resp.headers.get("access-control-allow-origin") == "*"


# appointments


def test_schedule_and_list_appointments(clinic_client):
    token = login(clinic_client, "dr-alice")
    resp = clinic_client.post(
        "/api/appointments",
        json={"patient_id": "pat-patient", "start": "2026-03-02T10:00:00+00:00", "duration_min": 30},
        headers=auth(token),
    )
    assert resp.status_code == 201
    created = resp.json()
    assert created["patient_id"] == "pat-patient"

    resp = clinic_client.get(
        "/api/appointments",
        params={"range": "day", "anchor": "2026-03-02"},
        headers=auth(token),
    )
    assert resp.status_code == 200
    assert [a["id"] for a in resp.json()] == [created["id"]]


def test_overlap_is_409_with_a_stable_code(clinic_client):
    token = login(clinic_client, "dr-alice")
    body = {"patient_id": "pat-patient", "start": "2026-03-02T10:00:00+00:00", "duration_min": 30}
    assert clinic_client.post("/api/appointments", json=body, headers=auth(token)).status_code == 201
    resp = clinic_client.post("/api/appointments", json=body, headers=auth(token))
    assert resp.status_code == 409
    assert resp.json()["error_code"] == "OverlapConflict"


def test_bad_range_kind_is_400(clinic_client):
    token = login(clinic_client, "dr-alice")
    resp = clinic_client.get(
        "/api/appointments", params={"range": "year", "anchor": "2026-03-02"}, headers=auth(token)
    )
    assert resp.status_code == 400
    assert resp.json()["error_code"] == "Malformed"


# notes, prescriptions, directory


def test_note_created_with_201(clinic_client):
    token = login(clinic_client, "dr-alice")
    resp = clinic_client.post(
        "/api/patients/pat-patient/notes", json={"body": "bp 120/80"}, headers=auth(token)
    )
    assert resp.status_code == 201
    assert resp.json()["body"] == "bp 120/80"


def test_prescription_submission_returns_a_receipt(clinic_client):
    token = login(clinic_client, "dr-alice")
    resp = clinic_client.post("/api/prescriptions", json=RX_BODY, headers=auth(token))
    assert resp.status_code == 201
    receipt = resp.json()
    assert receipt["status"] == "Received"
    assert receipt["acked_at"] > receipt["submitted_at"]
    assert receipt["latency_s"] == pytest.approx(receipt["acked_at"] - receipt["submitted_at"])


def test_patient_cannot_submit_over_http(clinic_client):
    token = login(clinic_client, "pat-patient")
    resp = clinic_client.post("/api/prescriptions", json=RX_BODY, headers=auth(token))
    assert resp.status_code == 403
    assert resp.json()["error_code"] == "Unauthorized"


def test_empty_medicine_list_is_rejected_by_validation(clinic_client):
    token = login(clinic_client, "dr-alice")
    resp = clinic_client.post(
        "/api/prescriptions", json={**RX_BODY, "medicines": []}, headers=auth(token)
    )
    assert resp.status_code == 422


def test_nearest_pharmacy_lookup(clinic_client):
    token = login(clinic_client, "dr-alice")
    resp = clinic_client.get(
        "/api/pharmacies/nearest", params={"lat": 40.7306, "lon": -73.9515}, headers=auth(token)
    )
    assert resp.status_code == 200
    assert resp.json()["pharmacy_id"] == "PH-EAST"


# pharmacy front


def test_intake_needs_no_bearer(world, pharmacy_client):
    key = world.subscriber_keys["dr-alice"]
    channel, handshake = SecureChannel.initiate("dr-alice", key, ("A5/1",), ("A5/1",))
    plaintext = json.dumps(prescription_to_doc(make_rx("rx-http"))).encode("utf-8")
    envelope = {"handshake": handshake, "frames": channel.encrypt(plaintext), "arrived_at": 0.0}
    msg = BrokerMessage("req-http", "pharmacy.PH-CENTRAL", "intake", json.dumps(envelope).encode())

    resp = pharmacy_client.post("/api/intake", json=msg.to_wire())
    assert resp.status_code == 200
    ack = json.loads(bytes.fromhex(resp.json()["payload"]).decode("utf-8"))
    assert ack["prescription_id"] == "rx-http"
    assert ack["status"] == "Received"


def test_queue_status_updates_and_patient_view(world, pharmacy_client):
    clinic_token = world.login("dr-alice", demo_secret("dr-alice"), "clinic")
    from carelink.domain.model import Medicine

    receipt = world.clinic.submit_prescription(
        clinic_token,
        "pat-patient",
        "PH-CENTRAL",
        (Medicine("statin", "10mg", 30, refills_remaining=1),),
    )
    rx_id = receipt.prescription_id

    bob = login(pharmacy_client, "bob-pharmacist")
    queue = pharmacy_client.get(
        "/api/prescriptions", params={"status": "outstanding"}, headers=auth(bob)
    )
    assert queue.status_code == 200
    rows = queue.json()
    assert [r["id"] for r in rows] == [rx_id]
    assert rows[0]["legal_events"] == ["StartFill"]

    for event, expect in (("StartFill", "Filling"), ("MarkReady", "Ready"), ("PickUp", "PickedUp")):
        resp = pharmacy_client.post(
            f"/api/prescriptions/{rx_id}/status", json={"event": event}, headers=auth(bob)
        )
        assert resp.status_code == 200
        assert resp.json()["status"] == expect
    assert resp.json()["legal_events"] == []

    pat = login(pharmacy_client, "pat-patient")
    mine = pharmacy_client.get(
        "/api/patients/pat-patient/prescriptions", headers=auth(pat)
    )
    assert mine.status_code == 200
    assert [r["status"] for r in mine.json()] == ["PickedUp"]

    renewal = pharmacy_client.post(f"/api/prescriptions/{rx_id}/renewal", headers=auth(pat))
    assert renewal.status_code == 201
    child = renewal.json()
    assert child["parent_id"] == rx_id
    assert child["medicines"][0]["refills_remaining"] == 0

    denied = pharmacy_client.post(
        f"/api/prescriptions/{child['id']}/renewal", headers=auth(pat)
    )
    assert denied.status_code == 409
    assert denied.json()["error_code"] == "NotTerminal"


def test_renewal_without_refills_reports_the_reason(world, pharmacy_client):
    clinic_token = world.login("dr-alice", demo_secret("dr-alice"), "clinic")
    from carelink.domain.model import Medicine

    receipt = world.clinic.submit_prescription(
        clinic_token, "pat-patient", "PH-CENTRAL", (Medicine("statin", "10mg", 30),)
    )
    bob = login(pharmacy_client, "bob-pharmacist")
    for event in ("StartFill", "MarkReady", "PickUp"):
        pharmacy_client.post(
            f"/api/prescriptions/{receipt.prescription_id}/status",
            json={"event": event},
            headers=auth(bob),
        )
    pat = login(pharmacy_client, "pat-patient")
    resp = pharmacy_client.post(
        f"/api/prescriptions/{receipt.prescription_id}/renewal", headers=auth(pat)
    )
    assert resp.status_code == 409
    assert resp.json()["error_code"] == "NoRefills"


def test_illegal_event_is_409(world, pharmacy_client):
    clinic_token = world.login("dr-alice", demo_secret("dr-alice"), "clinic")
    from carelink.domain.model import Medicine

    receipt = world.clinic.submit_prescription(
        clinic_token, "pat-patient", "PH-CENTRAL", (Medicine("statin", "10mg", 30),)
    )
    bob = login(pharmacy_client, "bob-pharmacist")
    resp = pharmacy_client.post(
        f"/api/prescriptions/{receipt.prescription_id}/status",
        json={"event": "PickUp"},
        headers=auth(bob),
    )
    assert resp.status_code == 409
    assert resp.json()["error_code"] == "IllegalTransition"


def test_unknown_prescription_is_404(pharmacy_client):
    bob = login(pharmacy_client, "bob-pharmacist")
    resp = pharmacy_client.post(
        "/api/prescriptions/rx-missing/status", json={"event": "StartFill"}, headers=auth(bob)
    )
    assert resp.status_code == 404
    assert resp.json()["error_code"] == "UnknownResource"


def test_unsupported_status_filter_is_400(pharmacy_client):
    bob = login(pharmacy_client, "bob-pharmacist")
    resp = pharmacy_client.get(
        "/api/prescriptions", params={"status": "everything"}, headers=auth(bob)
    )
    assert resp.status_code == 400


# sync over HTTP


def test_feed_is_served_as_atom(clinic_client):
    token = login(clinic_client, "dr-alice")
    clinic_client.post(
        "/api/appointments",
        json={"patient_id": "pat-patient", "start": "2026-03-02T10:00:00+00:00", "duration_min": 30},
        headers=auth(token),
    )
    resp = clinic_client.get("/api/sync/feed", params={"since": "start"}, headers=auth(token))
    assert resp.status_code == 200
    assert resp.headers["content-type"].startswith("application/atom+xml")
    assert b"<feed" in resp.content


def test_sync_round_trip_between_the_two_fronts(world, clinic_client, pharmacy_client):
    clinic_token = login(clinic_client, "dr-alice")
    clinic_client.post("/api/prescriptions", json=RX_BODY, headers=auth(clinic_token))

    bob = login(pharmacy_client, "bob-pharmacist")
    feed = pharmacy_client.get(
        "/api/sync/feed", params={"since": "start"}, headers=auth(bob)
    ).content
    result = clinic_client.post(
        "/api/sync/apply",
        content=feed,
        headers={**auth(clinic_token), "Content-Type": "application/atom+xml"},
    )
    assert result.status_code == 200
    body = result.json()
    assert set(body) == {"applied", "skipped", "conflicts"}
    # the pharmacy's Received copy must beat the clinic's Submitted original
    assert body["applied"] >= 1
    rx_docs = world.clinic.store.live_docs("prescription")
    assert [d.content["status"] for d in rx_docs] == ["Received"]


def test_http_peer_pulls_and_applies_through_the_wire(world, clinic_client, pharmacy_client):
    clinic_token = login(clinic_client, "dr-alice")
    clinic_client.post("/api/prescriptions", json=RX_BODY, headers=auth(clinic_token))

    bob = login(pharmacy_client, "bob-pharmacist")
    peer = HttpPeer("http://testserver", token=bob, client=pharmacy_client)
    feed_bytes = peer.feed_since("start")
    assert b"urn:carelink:feed" in feed_bytes
    result = peer.apply(feed_bytes)  # re-applying its own feed is a no-op
    assert result == {"applied": 0, "skipped": 1, "conflicts": []}


def test_malformed_feed_is_400(clinic_client):
    token = login(clinic_client, "dr-alice")
    resp = clinic_client.post(
        "/api/sync/apply",
        content=b"<notafeed/>",
        headers={**auth(token), "Content-Type": "application/atom+xml"},
    )
    assert resp.status_code == 400
    assert resp.json()["error_code"] == "MalformedFeed"


def test_bad_cursor_is_400(clinic_client):
    token = login(clinic_client, "dr-alice")
    resp = clinic_client.get("/api/sync/feed", params={"since": "zzz"}, headers=auth(token))
    assert resp.status_code == 400
    assert resp.json()["error_code"] == "InvalidCursor"
