"""Subscriber authentication: pre-shared key plus challenge-response.

The verifier sends a random 128-bit challenge; the subscriber answers with
a 32-bit response derived from the shared secret, which the verifier checks
by recomputation. The secret itself never crosses the air. The response and
session-key derivations use HMAC-SHA256, a standard keyed construction.

Mirroring classic GSM, only the subscriber is authenticated; mutual
authentication is off by default and available as an opt-in (the network
proves knowledge of the key with a second tag over the same challenge).
"""

from __future__ import annotations

import hmac
import hashlib
import json
from dataclasses import dataclass

KI_BYTES = 16  # 128-bit pre-shared key
SRES_BYTES = 4  # 32-bit response
SESSION_KEY_BYTES = 8  # 64-bit, sized for the stream ciphers


@dataclass(frozen=True)
class SubscriberKey:
    """128-bit pre-shared secret. Never serialized; repr stays opaque."""

    ki: bytes

    def __post_init__(self):
        if len(self.ki) != KI_BYTES:
            raise ValueError(f"ki must be {KI_BYTES} bytes")

    def __repr__(self) -> str:
        return "SubscriberKey(<redacted>)"

    __str__ = __repr__


def _mac(key: SubscriberKey, label: bytes, rand: bytes) -> bytes:
    return hmac.new(key.ki, label + b"|" + rand, hashlib.sha256).digest()


def derive_sres(key: SubscriberKey, rand: bytes) -> bytes:
    """32-bit signed response to a 128-bit challenge."""
    if len(rand) != 16:
        raise ValueError("challenge must be 16 bytes")
    return _mac(key, b"sres", rand)[:SRES_BYTES]


def verify_sres(key: SubscriberKey, rand: bytes, sres: bytes) -> bool:
    return hmac.compare_digest(derive_sres(key, rand), sres)


def derive_session_key(key: SubscriberKey, rand: bytes) -> bytes:
    """64-bit over-the-air cipher key agreed via the same challenge."""
    if len(rand) != 16:
        raise ValueError("challenge must be 16 bytes")
    return _mac(key, b"kc", rand)[:SESSION_KEY_BYTES]


def derive_network_token(key: SubscriberKey, rand: bytes) -> bytes:
    """Network-side proof for optional mutual authentication."""
    return _mac(key, b"net", rand)[:SRES_BYTES]


def load_subscriber_keys(path: str) -> dict[str, SubscriberKey]:
    """Key file: a JSON object of principal id -> hex-encoded 128-bit key."""
    with open(path, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, dict):
        raise ValueError("subscriber key file must be a JSON object")
    return {pid: SubscriberKey(bytes.fromhex(hexkey)) for pid, hexkey in raw.items()}


def dump_subscriber_keys(keys: dict[str, SubscriberKey], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({pid: k.ki.hex() for pid, k in keys.items()}, fh, indent=2, sort_keys=True)
        fh.write("\n")
