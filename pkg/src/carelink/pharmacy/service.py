"""The pharmacy's operations: intake, the queue, statuses, renewals.

Intake deduplicates on the broker request id, so a retried delivery
returns the original acknowledgement byte-for-byte and mutates nothing.
Processing time is modeled as a single worker whose cost grows with the
medicine count; its simulated-time bookkeeping feeds the latency bench.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, replace
from typing import Optional

from ..broker.messages import BrokerMessage
from ..domain.access import Action, ResourceRef, Unauthorized, UnknownResource, authorize, require
from ..domain.codec import MalformedDocument, doc_to_prescription, prescription_to_doc
from ..domain.model import (
    Prescription,
    PrescriptionEvent,
    PrescriptionStatus,
    Principal,
    Role,
    transition_prescription,
)
from ..domain.sessions import SessionManager
from ..ids import IdFactory, random_ids
from ..security.auth import SubscriberKey
from ..security.channel import AuthenticationFailed, NoCommonCipher, SecureChannel
from ..sync.store import ReplicaStore
from ..timeutil import Clock, utc_now
from ..versioning import Version

OUTSTANDING = ("Received", "Filling")

DEFAULT_BASE_SERVICE_MS = 5.0
DEFAULT_PER_MEDICINE_MS = 5.0


class MalformedPrescription(Exception):
    pass


class DecryptFailed(Exception):
    pass


class RenewalDenied(Exception):
    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(reason)


@dataclass(frozen=True)
class StatusEvent:
    at: float  # simulated seconds when known, else 0
    prescription_id: str
    status_from: str
    status_to: str


class PharmacyService:
    def __init__(
        self,
        pharmacy_id: str,
        store: ReplicaStore,
        sessions: SessionManager,
        principals: dict[str, Principal],
        subscriber_keys: dict[str, SubscriberKey],
        cipher_policy: tuple[str, ...] = ("A5/1",),
        ids: Optional[IdFactory] = None,
        clock: Clock = utc_now,
        base_service_ms: float = DEFAULT_BASE_SERVICE_MS,
        per_medicine_ms: float = DEFAULT_PER_MEDICINE_MS,
    ):
        self.pharmacy_id = pharmacy_id
        self.store = store
        self.sessions = sessions
        self.principals = principals
        self.subscriber_keys = subscriber_keys
        self.cipher_policy = tuple(cipher_policy)
        self._ids = ids or random_ids()
        self._clock = clock
        self.base_service_ms = base_service_ms
        self.per_medicine_ms = per_medicine_ms
        self.worker_free_at = 0.0  # simulated seconds; single fill-desk worker
        self.events: list[StatusEvent] = []
        self._ledger: dict[str, bytes] = {}  # request_id -> original ack bytes
        self._lock = threading.Lock()

    # --- intake -----------------------------------------------------------

    def handle_intake(self, msg: BrokerMessage) -> bytes:
        """Broker entry point. At-least-once delivery made effectively once."""
        with self._lock:
            seen = self._ledger.get(msg.request_id)
        if seen is not None:
            return seen
        try:
            envelope = json.loads(msg.payload.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise MalformedPrescription(f"envelope: {exc}") from None
        ack = self.receive_prescription(envelope, msg.request_id)
        return json.dumps(ack).encode("utf-8")

    def receive_prescription(self, envelope: dict, request_id: str) -> dict:
        try:
            channel = SecureChannel.accept(
                envelope["handshake"], self.subscriber_keys, self.cipher_policy
            )
            plaintext = channel.decrypt(envelope["frames"])
        except (AuthenticationFailed, NoCommonCipher) as exc:
            raise DecryptFailed(str(exc)) from None
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedPrescription(f"envelope: {exc}") from None
        try:
            doc = json.loads(plaintext.decode("utf-8"))
            incoming = doc_to_prescription(doc)
        except (UnicodeDecodeError, json.JSONDecodeError, MalformedDocument) as exc:
            raise MalformedPrescription(str(exc)) from None
        if incoming.pharmacy_id != self.pharmacy_id:
            raise MalformedPrescription(
                f"addressed to {incoming.pharmacy_id}, this is {self.pharmacy_id}"
            )

        arrived_at = float(envelope.get("arrived_at", 0.0))
        origin = envelope.get("origin_version")
        if origin:
            # sender's store version happened before ours must, so absorb it
            self.store.observe(Version(int(origin[0]), str(origin[1])))
        now = self._clock()
        received = transition_prescription(incoming, PrescriptionEvent.RECEIVE, now=now)

        with self._lock:
            # replay may have raced us between the early check and here
            seen = self._ledger.get(request_id)
            if seen is not None:
                return json.loads(seen.decode("utf-8"))
            service_s = (self.base_service_ms + self.per_medicine_ms * len(received.medicines)) / 1000.0
            start = max(arrived_at, self.worker_free_at)
            done = start + service_s
            self.worker_free_at = done
            self.store.put(received.id, "prescription", prescription_to_doc(received), now=now)
            self.events.append(
                StatusEvent(done, received.id, incoming.status.value, received.status.value)
            )
            # fixed-width timestamp keeps the ack size constant, so the
            # return leg's air time depends on nothing but the link
            ack = {
                "prescription_id": received.id,
                "status": received.status.value,
                "pharmacy_id": self.pharmacy_id,
                "done_at": f"{done:018.6f}",
                "request_id": request_id,
            }
            self._ledger[request_id] = json.dumps(ack).encode("utf-8")
        return ack

    # --- reads ------------------------------------------------------------

    def _principal(self, token: str) -> Principal:
        session = self.sessions.get(token)
        actor = self.principals.get(session.principal_id)
        if actor is None:
            raise Unauthorized(f"no principal for session: {session.principal_id}")
        return actor

    def _load(self, prescription_id: str) -> Prescription:
        doc = self.store.get(prescription_id)
        if doc is None:
            raise UnknownResource(prescription_id)
        p = doc_to_prescription(doc)
        return replace(p, version=self.store.get_version(prescription_id))

    def _all_prescriptions(self) -> list[Prescription]:
        rows = []
        for stored in self.store.live_docs("prescription"):
            p = doc_to_prescription(stored.content)
            if p.pharmacy_id == self.pharmacy_id:
                rows.append(replace(p, version=stored.version))
        return rows

    def list_outstanding(self, token: str) -> list[Prescription]:
        actor = self._principal(token)
        if actor.role not in (Role.PHARMACIST, Role.PRIVILEGED):
            raise Unauthorized(f"{actor.role.value} cannot view the queue")
        if actor.role is Role.PHARMACIST and actor.pharmacy_id != self.pharmacy_id:
            raise Unauthorized("pharmacist of a different pharmacy")
        rows = [p for p in self._all_prescriptions() if p.status.value in OUTSTANDING]
        rows.sort(key=lambda p: (p.created_at, p.id))
        self.sessions.record(token, "list_outstanding", "-")
        return rows

    def set_status(self, token: str, prescription_id: str, event: PrescriptionEvent) -> Prescription:
        actor = self._principal(token)
        p = self._load(prescription_id)
        ref = ResourceRef(
            "Prescription", p.id, p.creator_physician_id, p.patient_id, p.pharmacy_id
        )
        require(authorize(actor, ref, Action.WRITE), f"write {prescription_id}")
        if actor.role not in (Role.PHARMACIST, Role.PRIVILEGED):
            raise Unauthorized(f"{actor.role.value} cannot update statuses")
        now = self._clock()
        updated = transition_prescription(p, event, now=now)
        self.store.put(updated.id, "prescription", prescription_to_doc(updated), now=now)
        self.events.append(StatusEvent(0.0, p.id, p.status.value, updated.status.value))
        self.sessions.record(token, "set_status", prescription_id)
        return replace(updated, version=self.store.get_version(updated.id))

    def patient_status(self, token: str, patient_id: str) -> list[tuple[str, str]]:
        actor = self._principal(token)
        if actor.role is not Role.PRIVILEGED and actor.id != patient_id:
            raise Unauthorized("patients see only their own statuses")
        rows = [p for p in self._all_prescriptions() if p.patient_id == patient_id]
        rows.sort(key=lambda p: (p.created_at, p.id))
        self.sessions.record(token, "patient_status", patient_id)
        return [(p.id, p.status.value) for p in rows]

    def patient_prescriptions(self, token: str, patient_id: str) -> list[Prescription]:
        """Full rows for one patient, oldest first. Same gate as statuses."""
        actor = self._principal(token)
        if actor.role is not Role.PRIVILEGED and actor.id != patient_id:
            raise Unauthorized("patients see only their own prescriptions")
        rows = [p for p in self._all_prescriptions() if p.patient_id == patient_id]
        rows.sort(key=lambda p: (p.created_at, p.id))
        self.sessions.record(token, "patient_prescriptions", patient_id)
        return rows

    # --- renewals ---------------------------------------------------------

    def request_renewal(self, token: str, prescription_id: str) -> Prescription:
        actor = self._principal(token)
        original = self._load(prescription_id)
        if actor.id != original.patient_id:
            raise Unauthorized("only the prescription's patient may renew it")
        if not original.terminal:
            raise RenewalDenied("NotTerminal")
        if any(m.refills_remaining < 1 for m in original.medicines):
            raise RenewalDenied("NoRefills")
        now = self._clock()
        renewal = Prescription(
            id=self._ids(),
            patient_id=original.patient_id,
            creator_physician_id=original.creator_physician_id,
            pharmacy_id=original.pharmacy_id,
            medicines=tuple(
                replace(m, refills_remaining=m.refills_remaining - 1) for m in original.medicines
            ),
            status=PrescriptionStatus.RECEIVED,
            created_at=now,
            updated_at=now,
            parent_id=original.id,
        )
        self.store.put(renewal.id, "prescription", prescription_to_doc(renewal), now=now)
        self.events.append(StatusEvent(0.0, renewal.id, "-", renewal.status.value))
        self.sessions.record(token, "request_renewal", prescription_id)
        return replace(renewal, version=self.store.get_version(renewal.id))
