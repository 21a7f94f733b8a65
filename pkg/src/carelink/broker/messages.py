"""The broker's wire unit. Payload stays opaque bytes end to end."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class BrokerMessage:
    request_id: str
    service: str
    operation: str
    payload: bytes
    reply_to: str = ""

    def __post_init__(self):
        if not self.request_id:
            raise ValueError("request_id must be non-empty")
        if not self.service or not self.operation:
            raise ValueError("service and operation must be non-empty")
        if not isinstance(self.payload, (bytes, bytearray)):
            raise TypeError("payload must be bytes")

    def to_wire(self) -> dict:
        return {
            "request_id": self.request_id,
            "service": self.service,
            "operation": self.operation,
            "payload": self.payload.hex(),
            "reply_to": self.reply_to,
        }

    @classmethod
    def from_wire(cls, doc: dict) -> "BrokerMessage":
        return cls(
            request_id=doc["request_id"],
            service=doc["service"],
            operation=doc["operation"],
            payload=bytes.fromhex(doc["payload"]),
            reply_to=doc.get("reply_to", ""),
        )
