from .access import (
    AccessDecision,
    Action,
    ResourceRef,
    Unauthorized,
    UnknownResource,
    authorize,
    require,
)
from .model import (
    Appointment,
    ClinicalNote,
    IllegalTransition,
    Medicine,
    Prescription,
    PrescriptionEvent,
    PrescriptionStatus,
    Principal,
    Role,
    TERMINAL_STATUSES,
    TRANSITIONS,
    legal_events,
    transition_prescription,
)
from .sessions import CallLogEntry, InvalidSession, Session, SessionManager

__all__ = [
    "AccessDecision",
    "Action",
    "Appointment",
    "CallLogEntry",
    "ClinicalNote",
    "IllegalTransition",
    "InvalidSession",
    "Medicine",
    "Prescription",
    "PrescriptionEvent",
    "PrescriptionStatus",
    "Principal",
    "ResourceRef",
    "Role",
    "Session",
    "SessionManager",
    "TERMINAL_STATUSES",
    "TRANSITIONS",
    "Unauthorized",
    "UnknownResource",
    "authorize",
    "legal_events",
    "require",
    "transition_prescription",
]
