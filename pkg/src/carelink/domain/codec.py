"""Document forms of the domain types, for storage, sync, and the wire."""

from __future__ import annotations

from ..timeutil import from_rfc3339, to_rfc3339
from ..versioning import Version
from .model import (
    Appointment,
    ClinicalNote,
    Medicine,
    Prescription,
    PrescriptionStatus,
)


class MalformedDocument(Exception):
    pass


def medicine_to_doc(m: Medicine) -> dict:
    return {
        "name": m.name,
        "dosage": m.dosage,
        "quantity": m.quantity,
        "refills_remaining": m.refills_remaining,
    }


def prescription_to_doc(p: Prescription) -> dict:
    # version intentionally absent: the replica store owns versions, and
    # duplicating one here would go stale on the first remote apply
    doc = {
        "id": p.id,
        "patient_id": p.patient_id,
        "creator_physician_id": p.creator_physician_id,
        "pharmacy_id": p.pharmacy_id,
        "medicines": [medicine_to_doc(m) for m in p.medicines],
        "status": p.status.value,
        "created_at": to_rfc3339(p.created_at),
        "updated_at": to_rfc3339(p.updated_at),
    }
    if p.parent_id is not None:
        doc["parent_id"] = p.parent_id
    return doc


def doc_to_prescription(doc: dict) -> Prescription:
    try:
        return Prescription(
            id=doc["id"],
            patient_id=doc["patient_id"],
            creator_physician_id=doc["creator_physician_id"],
            pharmacy_id=doc["pharmacy_id"],
            medicines=tuple(
                Medicine(
                    name=m["name"],
                    dosage=m["dosage"],
                    quantity=int(m["quantity"]),
                    refills_remaining=int(m["refills_remaining"]),
                )
                for m in doc["medicines"]
            ),
            status=PrescriptionStatus(doc["status"]),
            created_at=from_rfc3339(doc["created_at"]),
            updated_at=from_rfc3339(doc["updated_at"]),
            version=Version(*doc["version"]) if "version" in doc else Version(0, ""),
            parent_id=doc.get("parent_id"),
        )
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise MalformedDocument(f"prescription document: {exc}") from None


def appointment_to_doc(a: Appointment) -> dict:
    return {
        "id": a.id,
        "patient_id": a.patient_id,
        "physician_id": a.physician_id,
        "start": to_rfc3339(a.start),
        "duration_min": a.duration_min,
        "note_ids": list(a.note_ids),
    }


def doc_to_appointment(doc: dict) -> Appointment:
    try:
        return Appointment(
            id=doc["id"],
            patient_id=doc["patient_id"],
            physician_id=doc["physician_id"],
            start=from_rfc3339(doc["start"]),
            duration_min=int(doc["duration_min"]),
            note_ids=tuple(doc.get("note_ids", ())),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDocument(f"appointment document: {exc}") from None


def note_to_doc(n: ClinicalNote) -> dict:
    return {
        "id": n.id,
        "patient_id": n.patient_id,
        "author_id": n.author_id,
        "body": n.body,
        "created_at": to_rfc3339(n.created_at),
    }


def doc_to_note(doc: dict) -> ClinicalNote:
    try:
        return ClinicalNote(
            id=doc["id"],
            patient_id=doc["patient_id"],
            author_id=doc["author_id"],
            body=doc["body"],
            created_at=from_rfc3339(doc["created_at"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDocument(f"note document: {exc}") from None
