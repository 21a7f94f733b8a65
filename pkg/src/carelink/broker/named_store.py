"""Enterprise record stores (HIS, LIS, PACS, CIS) behind the broker.

Each is a plain keyed document store. Mutations deduplicate on the
broker request_id, so at-least-once delivery still yields exactly one
effect, and the replayed request gets the original reply back.
"""

from __future__ import annotations

import json
import threading

from .dispatcher import Dispatcher
from .messages import BrokerMessage

STORE_NAMES = ("store.HIS", "store.LIS", "store.PACS", "store.CIS")


class NamedStore:
    def __init__(self):
        self._docs: dict[str, dict] = {}
        self._seen: dict[str, bytes] = {}  # request_id -> original reply
        self._lock = threading.Lock()

    def handle(self, msg: BrokerMessage) -> bytes:
        body = json.loads(msg.payload.decode("utf-8"))
        if msg.operation == "get":
            doc = self._docs.get(body["key"])
            return json.dumps({"found": doc is not None, "value": doc}).encode("utf-8")
        with self._lock:
            if msg.request_id in self._seen:
                return self._seen[msg.request_id]
            if msg.operation == "put":
                self._docs[body["key"]] = body["value"]
                reply = json.dumps({"ok": True}).encode("utf-8")
            elif msg.operation == "delete":
                existed = self._docs.pop(body["key"], None) is not None
                reply = json.dumps({"ok": True, "existed": existed}).encode("utf-8")
            else:
                raise ValueError(f"unsupported store operation: {msg.operation}")
            self._seen[msg.request_id] = reply
            return reply

    def size(self) -> int:
        return len(self._docs)


def expose_store(dispatcher: Dispatcher, name: str, store: NamedStore) -> None:
    for op in ("get", "put", "delete"):
        dispatcher.expose(name, op, store.handle)
