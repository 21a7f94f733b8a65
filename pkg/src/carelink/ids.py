"""Identifier generation. UUID strings, optionally from a seeded RNG."""

from __future__ import annotations

import random
import uuid
from typing import Callable

IdFactory = Callable[[], str]


def random_ids() -> IdFactory:
    return lambda: str(uuid.uuid4())


def seeded_ids(seed: int) -> IdFactory:
    """UUID4-shaped ids drawn from a seeded stream, for reproducible runs."""
    rng = random.Random(seed)
    return lambda: str(uuid.UUID(int=rng.getrandbits(128), version=4))
