from .directory import (
    EARTH_RADIUS_KM,
    EmptyDirectory,
    HttpDirectory,
    LocalDirectory,
    PharmacyDirectoryEntry,
    ProviderUnavailable,
    find_nearest_pharmacy,
    haversine_km,
)
from .service import ClinicService, OverlapConflict, SubmissionReceipt

__all__ = [
    "ClinicService",
    "EARTH_RADIUS_KM",
    "EmptyDirectory",
    "HttpDirectory",
    "LocalDirectory",
    "OverlapConflict",
    "PharmacyDirectoryEntry",
    "ProviderUnavailable",
    "SubmissionReceipt",
    "find_nearest_pharmacy",
    "haversine_km",
]
