from .service import (
    DecryptFailed,
    MalformedPrescription,
    OUTSTANDING,
    PharmacyService,
    RenewalDenied,
    StatusEvent,
)

__all__ = [
    "DecryptFailed",
    "MalformedPrescription",
    "OUTSTANDING",
    "PharmacyService",
    "RenewalDenied",
    "StatusEvent",
]
