"""Creator-attached access control.

Resources belong to whoever created them. Beyond the creator, only three
doors exist: privileged accounts, patients reading their own records, and
pharmacists working prescriptions routed to their own pharmacy. In
particular a physician can never see another physician's prescription.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .model import Principal, Role


class Action(str, Enum):
    READ = "Read"
    WRITE = "Write"


class AccessDecision(str, Enum):
    ALLOW = "Allow"
    DENY = "Deny"


class UnknownResource(Exception):
    def __init__(self, resource_id: str):
        self.resource_id = resource_id
        super().__init__(f"no such resource: {resource_id}")


class Unauthorized(Exception):
    """Raised by services when an access check lands on Deny."""


def require(decision: AccessDecision, what: str) -> None:
    if decision is not AccessDecision.ALLOW:
        raise Unauthorized(what)


@dataclass(frozen=True)
class ResourceRef:
    """The slice of a resource the access rules look at."""

    kind: str  # "Prescription", "Appointment", "ClinicalNote", ...
    id: str
    creator_id: str
    patient_id: Optional[str] = None
    pharmacy_id: Optional[str] = None


def authorize(actor: Principal, resource: ResourceRef, action: Action) -> AccessDecision:
    """Total and deterministic over every (role, relation, action) combination."""
    if actor.id == resource.creator_id:
        return AccessDecision.ALLOW
    if actor.role is Role.PRIVILEGED:
        return AccessDecision.ALLOW
    if (
        actor.role is Role.PATIENT
        and resource.patient_id is not None
        and actor.id == resource.patient_id
        and action is Action.READ
    ):
        return AccessDecision.ALLOW
    if (
        actor.role is Role.PHARMACIST
        and resource.kind == "Prescription"
        and resource.pharmacy_id is not None
        and actor.pharmacy_id == resource.pharmacy_id
    ):
        return AccessDecision.ALLOW
    return AccessDecision.DENY
