"""Logical-clock versions shared by the stores and the sync feeds."""

from __future__ import annotations

from typing import NamedTuple


class Version(NamedTuple):
    """(logical clock, node id), ordered lexicographically.

    Ties on the clock are broken by the node id string, so any two distinct
    writes are totally ordered and every replica picks the same winner.
    """

    clock: int
    node: str

    def __str__(self) -> str:
        return f"{self.clock}@{self.node}"


#: Sorts below every real write; the version of "never written".
GENESIS = Version(0, "")
