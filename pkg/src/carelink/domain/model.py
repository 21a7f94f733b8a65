"""Healthcare entities and the prescription status lifecycle.

Every type here is an immutable value; mutation returns a new value and the
stores stamp versions on write.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from datetime import datetime
from enum import Enum
from typing import Optional

from ..timeutil import utc_now
from ..versioning import Version


class Role(str, Enum):
    PHYSICIAN = "Physician"
    NURSE = "Nurse"
    PHARMACIST = "Pharmacist"
    PATIENT = "Patient"
    DEVICE = "Device"
    PRIVILEGED = "Privileged"


@dataclass(frozen=True)
class Principal:
    """An authenticated actor. Role is fixed for the principal's lifetime.

    pharmacy_id is the affiliation used by the access rules for pharmacists;
    it has no meaning for other roles.
    """

    id: str
    role: Role
    display_name: str = ""
    pharmacy_id: Optional[str] = None


class PrescriptionStatus(str, Enum):
    SUBMITTED = "Submitted"
    RECEIVED = "Received"
    FILLING = "Filling"
    READY = "Ready"
    PICKED_UP = "PickedUp"
    DELIVERED = "Delivered"


class PrescriptionEvent(str, Enum):
    RECEIVE = "Receive"
    START_FILL = "StartFill"
    MARK_READY = "MarkReady"
    PICK_UP = "PickUp"
    DELIVER = "Deliver"


#: The complete transition table. Anything absent is illegal.
TRANSITIONS: dict[tuple[PrescriptionStatus, PrescriptionEvent], PrescriptionStatus] = {
    (PrescriptionStatus.SUBMITTED, PrescriptionEvent.RECEIVE): PrescriptionStatus.RECEIVED,
    (PrescriptionStatus.RECEIVED, PrescriptionEvent.START_FILL): PrescriptionStatus.FILLING,
    (PrescriptionStatus.FILLING, PrescriptionEvent.MARK_READY): PrescriptionStatus.READY,
    (PrescriptionStatus.READY, PrescriptionEvent.PICK_UP): PrescriptionStatus.PICKED_UP,
    (PrescriptionStatus.READY, PrescriptionEvent.DELIVER): PrescriptionStatus.DELIVERED,
}

TERMINAL_STATUSES = frozenset({PrescriptionStatus.PICKED_UP, PrescriptionStatus.DELIVERED})


def legal_events(status: PrescriptionStatus) -> tuple[PrescriptionEvent, ...]:
    return tuple(ev for (st, ev) in TRANSITIONS if st == status)


class IllegalTransition(Exception):
    def __init__(self, status: PrescriptionStatus, event: PrescriptionEvent):
        self.status = status
        self.event = event
        super().__init__(f"no transition from {status.value} on {event.value}")


@dataclass(frozen=True)
class Medicine:
    name: str
    dosage: str
    quantity: int
    refills_remaining: int = 0

    def __post_init__(self):
        if self.quantity < 1:
            raise ValueError(f"quantity must be >= 1, got {self.quantity}")
        if self.refills_remaining < 0:
            raise ValueError("refills_remaining must be >= 0")


@dataclass(frozen=True)
class Prescription:
    id: str
    patient_id: str
    creator_physician_id: str
    pharmacy_id: str
    medicines: tuple[Medicine, ...]
    status: PrescriptionStatus
    created_at: datetime
    updated_at: datetime
    version: Version = Version(0, "")
    parent_id: Optional[str] = None  # set on renewals, links back to the original

    def __post_init__(self):
        if not self.medicines:
            raise ValueError("a prescription needs at least one medicine")
        if self.updated_at < self.created_at:
            raise ValueError("updated_at must not precede created_at")

    @property
    def terminal(self) -> bool:
        return self.status in TERMINAL_STATUSES


def transition_prescription(
    p: Prescription,
    event: PrescriptionEvent,
    now: Optional[datetime] = None,
) -> Prescription:
    """Apply one lifecycle event, returning the updated copy.

    Raises IllegalTransition for any (status, event) pair outside the table;
    the two terminal states accept no event at all.
    """
    key = (p.status, event)
    if key not in TRANSITIONS:
        raise IllegalTransition(p.status, event)
    stamp = now if now is not None else utc_now()
    return replace(
        p,
        status=TRANSITIONS[key],
        updated_at=max(stamp, p.updated_at),
        version=Version(p.version.clock + 1, p.version.node),
    )


@dataclass(frozen=True)
class Appointment:
    id: str
    patient_id: str
    physician_id: str
    start: datetime
    duration_min: int
    note_ids: tuple[str, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.duration_min <= 0:
            raise ValueError("duration must be positive")

    @property
    def end(self) -> datetime:
        from datetime import timedelta

        return self.start + timedelta(minutes=self.duration_min)

    def overlaps(self, other: "Appointment") -> bool:
        return self.start < other.end and other.start < self.end


@dataclass(frozen=True)
class ClinicalNote:
    """Append-only record; there is no operation that alters a stored note."""

    id: str
    patient_id: str
    author_id: str
    body: str
    created_at: datetime
