"""Client-side broker: name resolution plus ordered-failover invocation."""

from __future__ import annotations

from typing import Optional

from ..ids import IdFactory, random_ids
from .messages import BrokerMessage
from .registry import ServiceRegistry
from .transport import EndpointDown, Timeout, Transport

DEFAULT_TIMEOUT_S = 2.0
RETRY_BUDGET = 2  # full passes over the endpoint list


class AllReplicasFailed(Exception):
    def __init__(self, service: str, attempts: list):
        self.service = service
        self.attempts = attempts
        super().__init__(f"{service}: {len(attempts)} attempts exhausted")


class ClientBroker:
    """Safe for concurrent use; each invocation resolves independently.

    Delivery is at-least-once: a retry reuses the request_id, so receivers
    must deduplicate on it.
    """

    def __init__(
        self,
        registry: ServiceRegistry,
        transport: Transport,
        ids: Optional[IdFactory] = None,
        timeout_s: float = DEFAULT_TIMEOUT_S,
        retry_budget: int = RETRY_BUDGET,
    ):
        self._registry = registry
        self._transport = transport
        self._ids = ids or random_ids()
        self._timeout_s = timeout_s
        self._retry_budget = retry_budget

    def call(self, service: str, operation: str, payload: bytes, reply_to: str = "") -> bytes:
        msg = BrokerMessage(
            request_id=self._ids(),
            service=service,
            operation=operation,
            payload=payload,
            reply_to=reply_to,
        )
        return self.invoke(msg)

    def invoke(self, msg: BrokerMessage, timeout_s: Optional[float] = None) -> bytes:
        timeout = self._timeout_s if timeout_s is None else timeout_s
        record = self._registry.lookup(msg.service)
        attempts: list[tuple[str, Exception]] = []
        for _ in range(self._retry_budget):
            for endpoint in record.endpoints:
                try:
                    return self._transport.send(endpoint, msg, timeout)
                except (EndpointDown, Timeout) as exc:
                    attempts.append((endpoint, exc))
        raise AllReplicasFailed(msg.service, attempts)
