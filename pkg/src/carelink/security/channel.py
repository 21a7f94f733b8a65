"""Keystream application, cipher negotiation, and the per-connection channel.

A channel is one connection's cipher state: the negotiated suite, the
64-bit session key, and a frame counter that never repeats. Payloads are
chunked to fit the 228 keystream bits available per frame.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .a5 import CipherSuite, _REGISTRY, get_suite
from .auth import (
    SubscriberKey,
    derive_network_token,
    derive_session_key,
    derive_sres,
    verify_sres,
)

#: Payload bytes carried per frame; 28 * 8 = 224 bits of the 228 available.
FRAME_PAYLOAD_BYTES = 28


class KeystreamTooShort(Exception):
    def __init__(self, needed_bits: int, got_bits: int):
        super().__init__(f"need {needed_bits} keystream bits, got {got_bits}")


class NoCommonCipher(Exception):
    pass


class AuthenticationFailed(Exception):
    pass


def apply_keystream(payload: bytes, ks: Sequence[int]) -> bytes:
    """XOR a bit sequence into a payload; applying twice restores it.

    Keystream bits map to payload bits most significant first within each
    byte.
    """
    needed = len(payload) * 8
    if len(ks) < needed:
        raise KeystreamTooShort(needed, len(ks))
    out = bytearray(payload)
    for i in range(len(out)):
        mask = 0
        base = i * 8
        for j in range(8):
            mask = (mask << 1) | ks[base + j]
        out[i] ^= mask
    return bytes(out)


def negotiate_cipher(offered: Iterable[str], policy: Sequence[str]) -> CipherSuite:
    """Pick the policy's most-preferred suite that the peer also offers.

    The policy doubles as an allow-list: suites absent from it are never
    selected, which is how NULL stays off unless explicitly permitted, and
    unknown names are ignored entirely.
    """
    offered_set = set(offered)
    for name in policy:
        if name in offered_set and name in _REGISTRY:
            return get_suite(name)
    raise NoCommonCipher(f"offered {sorted(offered_set)} vs policy {list(policy)}")


@dataclass
class SecureChannel:
    """One connection's cipher state. Not shareable across connections."""

    suite: CipherSuite
    session_key: bytes
    network_token: Optional[bytes] = None
    _next_frame: int = 0
    _used_frames: set = field(default_factory=set, repr=False)

    @classmethod
    def initiate(
        cls,
        subscriber_id: str,
        key: SubscriberKey,
        offered: Sequence[str],
        peer_policy: Sequence[str],
        rng: Optional[random.Random] = None,
        mutual: bool = False,
    ) -> tuple["SecureChannel", dict]:
        """Open the sending side and produce the handshake header.

        The challenge travels with the first message and the receiver
        verifies the response by recomputation, so a connection costs no
        extra round trip.
        """
        rng = rng or random.Random()
        rand = rng.randbytes(16)
        suite = negotiate_cipher(offered, peer_policy)
        channel = cls(suite=suite, session_key=derive_session_key(key, rand))
        handshake = {
            "subscriber": subscriber_id,
            "rand": rand.hex(),
            "sres": derive_sres(key, rand).hex(),
            "cipher": suite.name,
            "offered": list(offered),
            "mutual": mutual,
        }
        return channel, handshake

    @classmethod
    def accept(
        cls,
        handshake: dict,
        keys: dict[str, SubscriberKey],
        policy: Sequence[str],
    ) -> "SecureChannel":
        """Verify the challenge response and mirror the cipher state."""
        subscriber = handshake.get("subscriber")
        key = keys.get(subscriber)
        if key is None:
            raise AuthenticationFailed(f"unknown subscriber: {subscriber}")
        rand = bytes.fromhex(handshake["rand"])
        if not verify_sres(key, rand, bytes.fromhex(handshake["sres"])):
            raise AuthenticationFailed("challenge response mismatch")
        chosen = negotiate_cipher(handshake.get("offered", []), policy)
        if chosen.name != handshake.get("cipher"):
            raise NoCommonCipher(
                f"sender used {handshake.get('cipher')}, policy selects {chosen.name}"
            )
        token = derive_network_token(key, rand) if handshake.get("mutual") else None
        return cls(suite=chosen, session_key=derive_session_key(key, rand), network_token=token)

    def _keystream(self, frame_number: int, n_bits: int) -> list:
        pair = (self.session_key, frame_number)
        if pair in self._used_frames:
            raise ValueError(f"keystream reuse for frame {frame_number}")
        self._used_frames.add(pair)
        return self.suite.keystream(self.session_key, frame_number, n_bits)

    def encrypt(self, payload: bytes) -> list[dict]:
        """Chunk and encipher; each chunk consumes one fresh frame number."""
        frames = []
        for off in range(0, len(payload), FRAME_PAYLOAD_BYTES):
            chunk = payload[off : off + FRAME_PAYLOAD_BYTES]
            n = self._next_frame
            self._next_frame += 1
            ks = self._keystream(n, len(chunk) * 8)
            frames.append({"n": n, "d": apply_keystream(chunk, ks).hex()})
        if not frames:  # empty payloads still produce one (empty) frame
            n = self._next_frame
            self._next_frame += 1
            frames.append({"n": n, "d": ""})
        return frames

    def decrypt(self, frames: Iterable[dict]) -> bytes:
        out = bytearray()
        for frame in frames:
            data = bytes.fromhex(frame["d"])
            if not data:
                continue
            ks = self._keystream(int(frame["n"]), len(data) * 8)
            out.extend(apply_keystream(data, ks))
        return bytes(out)
