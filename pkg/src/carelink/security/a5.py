"""Over-the-air stream ciphers behind a pluggable registry.

A5/1 is the real construction: three LFSRs of lengths 19/22/23 with
majority-rule clocking, taps and clock bits per the public description of
the algorithm. Registers are packed into ints here; an independent
bit-list implementation lives with the test suite and the two are checked
against each other.

The "A5/2" entry is NOT the genuine A5/2: it is a deliberately weak
single-register stand-in occupying the weaker-cipher slot, present so that
negotiation and cipher replacement have something real to choose between.
"""

from __future__ import annotations

from functools import lru_cache
from dataclasses import dataclass
from typing import Callable

#: Two 114-bit bursts per TDMA frame.
KEYSTREAM_BITS_PER_FRAME = 228

FRAME_NUMBER_BITS = 22

_R1_MASK = (1 << 19) - 1
_R2_MASK = (1 << 22) - 1
_R3_MASK = (1 << 23) - 1

_R1_TAPS = 0x072000  # bits 18, 17, 16, 13
_R2_TAPS = 0x300000  # bits 21, 20
_R3_TAPS = 0x700080  # bits 22, 21, 20, 7

_R1_CLOCK = 1 << 8
_R2_CLOCK = 1 << 10
_R3_CLOCK = 1 << 10

_R1_OUT = 1 << 18
_R2_OUT = 1 << 21
_R3_OUT = 1 << 22


class FrameNumberOverflow(Exception):
    def __init__(self, frame_number: int):
        super().__init__(f"frame number {frame_number} does not fit in 22 bits")


def majority(a: int, b: int, c: int) -> int:
    return (a & b) | (a & c) | (b & c)


def _parity(x: int) -> int:
    return x.bit_count() & 1


def _clock_reg(reg: int, mask: int, taps: int, in_bit: int = 0) -> int:
    fb = _parity(reg & taps) ^ in_bit
    return ((reg << 1) | fb) & mask


def a5_keystream(session_key: bytes, frame_number: int, n_bits: int) -> list[int]:
    """A5/1 keystream bits for one frame.

    Key setup clocks all three registers regularly while feeding in the 64
    key bits (byte 0 first, low bit of each byte first) and then the 22
    frame bits, mixes for 100 majority-clocked cycles, and emits up to 228
    output bits, each the XOR of the three register MSBs.
    """
    if len(session_key) != 8:
        raise ValueError("session key must be 64 bits")
    if not (0 <= frame_number < (1 << FRAME_NUMBER_BITS)):
        raise FrameNumberOverflow(frame_number)
    if not (0 <= n_bits <= KEYSTREAM_BITS_PER_FRAME):
        raise ValueError(f"n_bits must be within [0, {KEYSTREAM_BITS_PER_FRAME}]")
    return list(_a5_frame(session_key, frame_number, n_bits))


# the receiver regenerates the sender's exact bits for every frame, so a
# small memo halves the per-message cost
@lru_cache(maxsize=4096)
def _a5_frame(session_key: bytes, frame_number: int, n_bits: int) -> tuple:
    # register steps are inlined below: this runs per frame on every
    # payload byte, and call overhead triples the cost
    r1 = r2 = r3 = 0
    for i in range(64):
        bit = (session_key[i >> 3] >> (i & 7)) & 1
        r1 = ((r1 << 1) | (((r1 & _R1_TAPS).bit_count() & 1) ^ bit)) & _R1_MASK
        r2 = ((r2 << 1) | (((r2 & _R2_TAPS).bit_count() & 1) ^ bit)) & _R2_MASK
        r3 = ((r3 << 1) | (((r3 & _R3_TAPS).bit_count() & 1) ^ bit)) & _R3_MASK
    for i in range(FRAME_NUMBER_BITS):
        bit = (frame_number >> i) & 1
        r1 = ((r1 << 1) | (((r1 & _R1_TAPS).bit_count() & 1) ^ bit)) & _R1_MASK
        r2 = ((r2 << 1) | (((r2 & _R2_TAPS).bit_count() & 1) ^ bit)) & _R2_MASK
        r3 = ((r3 << 1) | (((r3 & _R3_TAPS).bit_count() & 1) ^ bit)) & _R3_MASK

    out: list[int] = []
    append = out.append
    for step in range(100 + n_bits):
        c1 = (r1 >> 8) & 1
        c2 = (r2 >> 10) & 1
        c3 = (r3 >> 10) & 1
        m = (c1 + c2 + c3) >> 1
        if c1 == m:
            r1 = ((r1 << 1) | ((r1 & _R1_TAPS).bit_count() & 1)) & _R1_MASK
        if c2 == m:
            r2 = ((r2 << 1) | ((r2 & _R2_TAPS).bit_count() & 1)) & _R2_MASK
        if c3 == m:
            r3 = ((r3 << 1) | ((r3 & _R3_TAPS).bit_count() & 1)) & _R3_MASK
        if step >= 100:
            append(((r1 >> 18) ^ (r2 >> 21) ^ (r3 >> 22)) & 1)
    return tuple(out)


def _weak_keystream(session_key: bytes, frame_number: int, n_bits: int) -> list[int]:
    """Toy keystream standing in for A5/2; NOT the published algorithm.

    One 23-bit LFSR keyed by folding the session key and frame number
    together. Kept deliberately simple to model "the weaker cipher".
    """
    if not (0 <= frame_number < (1 << FRAME_NUMBER_BITS)):
        raise FrameNumberOverflow(frame_number)
    if not (0 <= n_bits <= KEYSTREAM_BITS_PER_FRAME):
        raise ValueError(f"n_bits must be within [0, {KEYSTREAM_BITS_PER_FRAME}]")
    key_int = int.from_bytes(session_key, "big")
    state = ((key_int ^ (key_int >> 23) ^ (key_int >> 41)) ^ (frame_number * 0x9E37)) & _R3_MASK
    state |= 1  # never the all-zero state
    out = []
    for _ in range(n_bits):
        out.append(state & 1)
        fb = ((state >> 22) ^ (state >> 17)) & 1  # x^23 + x^18 + 1, primitive
        state = ((state << 1) | fb) & _R3_MASK
    return out


def _null_keystream(session_key: bytes, frame_number: int, n_bits: int) -> list[int]:
    return [0] * n_bits


@dataclass(frozen=True)
class CipherSuite:
    name: str
    keystream: Callable[[bytes, int, int], list[int]]
    conformant: bool = True


A5_1 = CipherSuite("A5/1", a5_keystream)
A5_2_STAND_IN = CipherSuite("A5/2", _weak_keystream, conformant=False)
NULL_CIPHER = CipherSuite("NULL", _null_keystream)

_REGISTRY: dict[str, CipherSuite] = {
    suite.name: suite for suite in (A5_1, A5_2_STAND_IN, NULL_CIPHER)
}


class UnknownCipher(Exception):
    def __init__(self, name: str):
        super().__init__(f"no such cipher suite: {name}")


def cipher_registry() -> dict[str, CipherSuite]:
    """Read-only after startup; safe for concurrent lookup."""
    return dict(_REGISTRY)


def get_suite(name: str) -> CipherSuite:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownCipher(name) from None
