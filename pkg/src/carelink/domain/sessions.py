"""Authenticated sessions with a per-call audit log.

Tokens are opaque random strings and are kept out of every repr and log
line. An idle session expires after eight hours by default.
"""

from __future__ import annotations

import secrets
from dataclasses import dataclass, field, replace
from datetime import datetime, timedelta
from typing import Callable, Optional

from ..timeutil import Clock, utc_now
from .model import Principal


class InvalidSession(Exception):
    pass


@dataclass(frozen=True)
class CallLogEntry:
    at: datetime
    op_name: str
    resource_id: str


@dataclass(frozen=True)
class Session:
    token: str = field(repr=False)
    principal_id: str = ""
    created_at: datetime = field(default_factory=utc_now)
    last_seen: datetime = field(default_factory=utc_now)
    call_log: tuple[CallLogEntry, ...] = ()

    def __repr__(self) -> str:  # token must never leak into logs
        return (
            f"Session(principal_id={self.principal_id!r}, "
            f"created_at={self.created_at!r}, calls={len(self.call_log)})"
        )


def record_call(
    session: Session, op_name: str, resource_id: str, now: Optional[datetime] = None
) -> Session:
    """Append one audit entry; timestamps never run backwards."""
    at = now if now is not None else utc_now()
    if session.call_log:
        at = max(at, session.call_log[-1].at)
    entry = CallLogEntry(at=at, op_name=op_name, resource_id=resource_id)
    return replace(session, call_log=session.call_log + (entry,), last_seen=at)


class SessionManager:
    """Issues, validates, and expires session tokens for one service."""

    def __init__(
        self,
        idle_timeout: timedelta = timedelta(hours=8),
        clock: Clock = utc_now,
        token_factory: Optional[Callable[[], str]] = None,
    ):
        self.idle_timeout = idle_timeout
        self._clock = clock
        self._token_factory = token_factory or (lambda: secrets.token_urlsafe(24))
        self._sessions: dict[str, Session] = {}

    def open(self, principal: Principal) -> Session:
        now = self._clock()
        session = Session(
            token=self._token_factory(),
            principal_id=principal.id,
            created_at=now,
            last_seen=now,
        )
        self._sessions[session.token] = session
        return session

    def get(self, token: str) -> Session:
        session = self._sessions.get(token)
        if session is None:
            raise InvalidSession("unknown token")
        if self._clock() - session.last_seen > self.idle_timeout:
            del self._sessions[token]
            raise InvalidSession("session expired")
        return session

    def record(self, token: str, op_name: str, resource_id: str) -> Session:
        session = self.get(token)
        updated = record_call(session, op_name, resource_id, now=self._clock())
        self._sessions[token] = updated
        return updated

    def close(self, token: str) -> None:
        self._sessions.pop(token, None)
