"""Shared HTTP conventions: bearer auth, error bodies, CORS.

Every error body is {"error_code": ..., "message": ...} and the code is
stable enough for a UI to branch on.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .broker.client import AllReplicasFailed
from .broker.registry import UnknownService
from .broker.transport import Timeout
from .clinic.directory import EmptyDirectory, ProviderUnavailable
from .clinic.service import OverlapConflict
from .domain.access import Unauthorized, UnknownResource
from .domain.codec import MalformedDocument
from .domain.model import IllegalTransition
from .domain.sessions import InvalidSession
from .gsm.link import OutOfCoverage, TransferFailed
from .pharmacy.service import DecryptFailed, MalformedPrescription, RenewalDenied
from .sync.atom import MalformedFeed
from .sync.feed import InvalidCursor
from .world import BadCredentials

_STATUS_BY_TYPE: list[tuple[type, int, str]] = [
    (BadCredentials, 401, "BadCredentials"),
    (InvalidSession, 401, "InvalidSession"),
    (Unauthorized, 403, "Unauthorized"),
    (UnknownResource, 404, "UnknownResource"),
    (UnknownService, 404, "UnknownService"),
    (OverlapConflict, 409, "OverlapConflict"),
    (IllegalTransition, 409, "IllegalTransition"),
    (MalformedDocument, 400, "Malformed"),
    (MalformedPrescription, 400, "Malformed"),
    (MalformedFeed, 400, "MalformedFeed"),
    (InvalidCursor, 400, "InvalidCursor"),
    (DecryptFailed, 400, "DecryptFailed"),
    (EmptyDirectory, 404, "EmptyDirectory"),
    (ProviderUnavailable, 502, "ProviderUnavailable"),
    (TransferFailed, 502, "TransferFailed"),
    (OutOfCoverage, 502, "OutOfCoverage"),
    (AllReplicasFailed, 502, "AllReplicasFailed"),
    (Timeout, 502, "Timeout"),
    (ValueError, 400, "Malformed"),
]


def classify(exc: Exception) -> tuple[int, str]:
    if isinstance(exc, RenewalDenied):
        return 409, exc.reason
    for etype, status, code in _STATUS_BY_TYPE:
        if isinstance(exc, etype):
            return status, code
    return 500, "Internal"


def install_conventions(app: FastAPI) -> None:
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    known = tuple(t for t, _, _ in _STATUS_BY_TYPE) + (RenewalDenied,)

    @app.exception_handler(Exception)
    async def _on_error(request: Request, exc: Exception):
        if not isinstance(exc, known):
            raise exc
        status, code = classify(exc)
        return JSONResponse(status_code=status, content={"error_code": code, "message": str(exc)})

    # FastAPI only routes through the generic handler for uncaught types if
    # they are registered individually as well
    for etype in known:
        app.add_exception_handler(etype, _on_error)


def bearer_token(request: Request) -> str:
    header = request.headers.get("authorization", "")
    scheme, _, token = header.partition(" ")
    if scheme.lower() != "bearer" or not token:
        raise InvalidSession("missing bearer token")
    return token
