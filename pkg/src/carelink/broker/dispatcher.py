"""Server-side half of the broker: routes messages to local handlers."""

from __future__ import annotations

from typing import Callable

from .messages import BrokerMessage
from .registry import UnknownService

Handler = Callable[[BrokerMessage], bytes]


class UnknownOperation(Exception):
    pass


class Dispatcher:
    """One per node; holds every service the node hosts."""

    def __init__(self):
        self._handlers: dict[tuple[str, str], Handler] = {}

    def expose(self, service: str, operation: str, handler: Handler) -> None:
        self._handlers[(service, operation)] = handler

    def services(self) -> set[str]:
        return {svc for svc, _ in self._handlers}

    def dispatch(self, msg: BrokerMessage) -> bytes:
        handler = self._handlers.get((msg.service, msg.operation))
        if handler is None:
            if msg.service not in self.services():
                raise UnknownService(msg.service)
            raise UnknownOperation(f"{msg.service}.{msg.operation}")
        return handler(msg)
