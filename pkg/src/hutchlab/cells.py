"""Finite cell sets backed by integer bitmasks.

Every subset of cells is one Python int: bit i set means cell i belongs to
the set.  This keeps union/intersection/equality exact and cheap, which the
iteration engines rely on heavily.  Instances are immutable.
"""

from __future__ import annotations

from typing import Iterable, Iterator


def mask_of(cells: Iterable[int]) -> int:
    m = 0
    for c in cells:
        m |= 1 << c
    return m


def iter_bits(mask: int) -> Iterator[int]:
    """Yield set bit positions in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class CellSet:
    """Immutable set of cell indices."""

    __slots__ = ("mask",)

    def __init__(self, cells: Iterable[int] = ()):
        object.__setattr__(self, "mask", mask_of(cells))

    @classmethod
    def from_mask(cls, mask: int) -> "CellSet":
        if mask < 0:
            raise ValueError("cell masks are non-negative")
        obj = object.__new__(cls)
        object.__setattr__(obj, "mask", mask)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("CellSet is immutable")

    def members(self) -> tuple[int, ...]:
        return tuple(iter_bits(self.mask))

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __contains__(self, cell: int) -> bool:
        return cell >= 0 and (self.mask >> cell) & 1 == 1

    def __eq__(self, other) -> bool:
        return isinstance(other, CellSet) and self.mask == other.mask

    def __hash__(self) -> int:
        return hash(self.mask)

    def __or__(self, other: "CellSet") -> "CellSet":
        return CellSet.from_mask(self.mask | other.mask)

    def __and__(self, other: "CellSet") -> "CellSet":
        return CellSet.from_mask(self.mask & other.mask)

    def __sub__(self, other: "CellSet") -> "CellSet":
        return CellSet.from_mask(self.mask & ~other.mask)

    def __le__(self, other: "CellSet") -> bool:
        return self.mask | other.mask == other.mask

    def issubset(self, other: "CellSet") -> bool:
        return self <= other

    def isdisjoint(self, other: "CellSet") -> bool:
        return self.mask & other.mask == 0

    def __repr__(self) -> str:
        return f"CellSet({list(self.members())!r})"


EMPTY = CellSet.from_mask(0)
