"""Three-valued verdicts for properties checked at a fixed resolution."""

from __future__ import annotations

from enum import Enum


class Verdict(str, Enum):
    """Outcome of a property check at a given resolution and horizon.

    Verdicts are statements about the discretized system only; reports carry
    the resolution and horizon so the claim scope is always explicit.
    """

    PROVED = "proved-at-resolution"
    REFUTED = "refuted-at-resolution"
    UNRESOLVED = "unresolved"

    def __str__(self) -> str:
        return self.value


def from_bool(flag: bool) -> Verdict:
    return Verdict.PROVED if flag else Verdict.REFUTED
