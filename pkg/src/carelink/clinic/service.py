"""The clinic's operations: appointments, notes, submissions, lookup.

Prescription submission is the full round trip: serialize, encipher,
time the ciphertext across the air link, hand it to the broker, and time
the acknowledgement back. The receipt's two timestamps are simulated
seconds; their difference is the latency the bench measures.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from datetime import date, datetime, time, timedelta, timezone
from typing import Optional, Sequence

from ..broker.client import ClientBroker
from ..domain.access import Action, ResourceRef, Unauthorized, UnknownResource, authorize, require
from ..domain.codec import (
    appointment_to_doc,
    doc_to_appointment,
    doc_to_note,
    note_to_doc,
    prescription_to_doc,
)
from ..domain.model import (
    Appointment,
    ClinicalNote,
    Medicine,
    Prescription,
    PrescriptionStatus,
    Principal,
    Role,
)
from ..domain.sessions import SessionManager
from ..gsm.link import GsmLink
from ..ids import IdFactory, random_ids
from ..security.auth import SubscriberKey
from ..security.channel import SecureChannel
from ..sync.store import ReplicaStore
from ..timeutil import Clock, utc_now
from .directory import DirectoryProvider, PharmacyDirectoryEntry, find_nearest_pharmacy


class OverlapConflict(Exception):
    def __init__(self, existing_id: str):
        self.existing_id = existing_id
        super().__init__(f"overlaps appointment {existing_id}")


@dataclass(frozen=True)
class SubmissionReceipt:
    prescription_id: str
    pharmacy_id: str
    submitted_at: float  # simulated seconds
    acked_at: float
    status: str = PrescriptionStatus.RECEIVED.value

    def __post_init__(self):
        if self.acked_at < self.submitted_at:
            raise ValueError("acknowledged before submission")

    @property
    def latency_s(self) -> float:
        return self.acked_at - self.submitted_at


class ClinicService:
    def __init__(
        self,
        store: ReplicaStore,
        sessions: SessionManager,
        principals: dict[str, Principal],
        subscriber_keys: dict[str, SubscriberKey],
        broker: ClientBroker,
        link: GsmLink,
        directory: DirectoryProvider,
        directory_fallback: Optional[DirectoryProvider] = None,
        cipher_offer: tuple[str, ...] = ("A5/1",),
        cipher_policy: tuple[str, ...] = ("A5/1",),
        ids: Optional[IdFactory] = None,
        clock: Clock = utc_now,
    ):
        self.store = store
        self.sessions = sessions
        self.principals = principals
        self.subscriber_keys = subscriber_keys
        self.broker = broker
        self.link = link
        self.directory = directory
        self.directory_fallback = directory_fallback
        self.cipher_offer = tuple(cipher_offer)
        self.cipher_policy = tuple(cipher_policy)
        self._ids = ids or random_ids()
        self._clock = clock

    def _principal(self, token: str) -> Principal:
        session = self.sessions.get(token)
        actor = self.principals.get(session.principal_id)
        if actor is None:
            raise Unauthorized(f"no principal for session: {session.principal_id}")
        return actor

    # --- appointments -------------------------------------------------------

    def _appointments(self) -> list[Appointment]:
        return [doc_to_appointment(d.content) for d in self.store.live_docs("appointment")]

    def schedule_appointment(
        self, token: str, patient_id: str, start: datetime, duration_min: int
    ) -> Appointment:
        actor = self._principal(token)
        if actor.role is not Role.PHYSICIAN:
            raise Unauthorized("appointments belong to physicians")
        appt = Appointment(
            id=self._ids(),
            patient_id=patient_id,
            physician_id=actor.id,
            start=start,
            duration_min=duration_min,
        )
        for other in self._appointments():
            if other.physician_id == actor.id and appt.overlaps(other):
                raise OverlapConflict(other.id)
        self.store.put(appt.id, "appointment", appointment_to_doc(appt), now=self._clock())
        self.sessions.record(token, "schedule_appointment", appt.id)
        return appt

    def list_appointments(self, token: str, range_kind: str, anchor: date) -> list[Appointment]:
        actor = self._principal(token)
        if actor.role not in (Role.PHYSICIAN, Role.PRIVILEGED):
            raise Unauthorized(f"{actor.role.value} has no appointment book")
        if range_kind not in ("day", "week"):
            raise ValueError(f"range must be day or week, not {range_kind}")
        lo = datetime.combine(anchor, time.min, tzinfo=timezone.utc)
        hi = lo + timedelta(days=1 if range_kind == "day" else 7)
        rows = [
            a
            for a in self._appointments()
            if (actor.role is Role.PRIVILEGED or a.physician_id == actor.id)
            and a.start < hi
            and a.end > lo
        ]
        rows.sort(key=lambda a: (a.start, a.id))
        self.sessions.record(token, "list_appointments", f"{range_kind}:{anchor.isoformat()}")
        return rows

    # --- notes ---------------------------------------------------------------

    def add_note(self, token: str, patient_id: str, body: str) -> ClinicalNote:
        actor = self._principal(token)
        if actor.role not in (Role.PHYSICIAN, Role.NURSE):
            raise Unauthorized("notes are written by physicians and nurses")
        note = ClinicalNote(
            id=self._ids(),
            patient_id=patient_id,
            author_id=actor.id,
            body=body,
            created_at=self._clock(),
        )
        self.store.put(note.id, "note", note_to_doc(note), now=note.created_at)
        self.sessions.record(token, "add_note", note.id)
        return note

    def read_note(self, token: str, note_id: str) -> ClinicalNote:
        actor = self._principal(token)
        doc = self.store.get(note_id)
        if doc is None:
            raise UnknownResource(note_id)
        note = doc_to_note(doc)
        ref = ResourceRef("ClinicalNote", note.id, note.author_id, note.patient_id)
        require(authorize(actor, ref, Action.READ), f"read {note_id}")
        self.sessions.record(token, "read_note", note_id)
        return note

    # --- prescriptions ---------------------------------------------------------

    def submit_prescription(
        self,
        token: str,
        patient_id: str,
        pharmacy_id: str,
        medicines: Sequence[Medicine],
        sim_t: float = 0.0,
    ) -> SubmissionReceipt:
        actor = self._principal(token)
        if actor.role is not Role.PHYSICIAN:
            raise Unauthorized("only physicians prescribe")
        key = self.subscriber_keys.get(actor.id)
        if key is None:
            raise Unauthorized(f"no air-interface key provisioned for {actor.id}")
        now = self._clock()
        rx = Prescription(
            id=self._ids(),
            patient_id=patient_id,
            creator_physician_id=actor.id,
            pharmacy_id=pharmacy_id,
            medicines=tuple(medicines),
            status=PrescriptionStatus.SUBMITTED,
            created_at=now,
            updated_at=now,
        )
        origin_version = self.store.put(rx.id, "prescription", prescription_to_doc(rx), now=now)

        plaintext = json.dumps(prescription_to_doc(rx)).encode("utf-8")
        channel, handshake = SecureChannel.initiate(
            actor.id, key, self.cipher_offer, self.cipher_policy
        )
        frames = channel.encrypt(plaintext)
        cipher_bytes = sum(len(f["d"]) // 2 for f in frames)

        up = self.link.transfer(cipher_bytes, start_t=sim_t)
        envelope = {
            "handshake": handshake,
            "frames": frames,
            "arrived_at": up.delivered_at,
            # carries causality so the receiver's clock jumps past ours and
            # its Received doc wins the sync merge
            "origin_version": [origin_version.clock, origin_version.node],
        }
        ack_bytes = self.broker.call(
            f"pharmacy.{pharmacy_id}", "intake", json.dumps(envelope).encode("utf-8")
        )
        ack = json.loads(ack_bytes.decode("utf-8"))
        down = self.link.transfer(len(ack_bytes), start_t=float(ack["done_at"]))

        self.sessions.record(token, "submit_prescription", rx.id)
        return SubmissionReceipt(
            prescription_id=rx.id,
            pharmacy_id=pharmacy_id,
            submitted_at=sim_t,
            acked_at=down.delivered_at,
            status=ack.get("status", PrescriptionStatus.RECEIVED.value),
        )

    # --- directory ---------------------------------------------------------------

    def find_nearest(self, token: str, lat: float, lon: float) -> PharmacyDirectoryEntry:
        self._principal(token)  # any authenticated role may search
        entry = find_nearest_pharmacy(lat, lon, self.directory, self.directory_fallback)
        self.sessions.record(token, "find_nearest", entry.pharmacy_id)
        return entry
