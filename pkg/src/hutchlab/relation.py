"""Cell relations: the discrete stand-in for a closed relation on a space.

A relation stores, for every cell i, the bitmask of its successor cells.
Image, inverse, composition and iteration are all exact set algebra, so every
verdict built on top of them is bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .cells import CellSet, iter_bits
from .errors import RelationError
from .space import DiscreteSpace


class CellRelation:
    """Per-cell successor sets over a fixed space."""

    __slots__ = ("space", "successors")

    def __init__(self, space: DiscreteSpace, successors: Sequence[int]):
        if len(successors) != space.cell_count:
            raise RelationError(
                f"expected {space.cell_count} successor sets, got {len(successors)}"
            )
        full = space.full_mask
        for i, mask in enumerate(successors):
            if mask & ~full:
                raise RelationError(f"successors of cell {i} leave the space")
        self.space = space
        self.successors = tuple(successors)

    @property
    def total(self) -> bool:
        return all(mask != 0 for mask in self.successors)

    @property
    def surjective(self) -> bool:
        acc = 0
        for mask in self.successors:
            acc |= mask
        return acc == self.space.full_mask

    def successor_set(self, cell: int) -> CellSet:
        return CellSet.from_mask(self.successors[cell])

    def image_mask(self, mask: int) -> int:
        out = 0
        succ = self.successors
        while mask:
            low = mask & -mask
            out |= succ[low.bit_length() - 1]
            mask ^= low
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CellRelation)
            and self.space == other.space
            and self.successors == other.successors
        )

    def __hash__(self) -> int:
        return hash((self.space, self.successors))

    def __repr__(self) -> str:
        return f"CellRelation({self.space.kind}:{self.space.cell_count} cells)"


def identity_relation(space: DiscreteSpace) -> CellRelation:
    return CellRelation(space, [1 << i for i in range(space.cell_count)])


def image(rel: CellRelation, a: CellSet) -> CellSet:
    """Union of successor sets over the members of ``a`` (empty in, empty out)."""
    return CellSet.from_mask(rel.image_mask(a.mask))


def inverse(rel: CellRelation) -> CellRelation:
    out = [0] * rel.space.cell_count
    for i, mask in enumerate(rel.successors):
        bit = 1 << i
        for j in iter_bits(mask):
            out[j] |= bit
    return CellRelation(rel.space, out)


def compose(outer: CellRelation, inner: CellRelation) -> CellRelation:
    """Relation applying ``inner`` first, then ``outer``."""
    if outer.space != inner.space:
        raise RelationError("cannot compose relations over different spaces")
    return CellRelation(outer.space, [outer.image_mask(m) for m in inner.successors])


def relation_power(rel: CellRelation, n: int) -> CellRelation:
    if n < 0:
        raise RelationError("relation power requires n >= 0")
    result = identity_relation(rel.space)
    for _ in range(n):
        result = compose(rel, result)
    return result


def union_relations(space: DiscreteSpace, rels: Sequence[CellRelation]) -> CellRelation:
    if not rels:
        raise RelationError("union of zero relations is undefined")
    out = [0] * space.cell_count
    for r in rels:
        if r.space != space:
            raise RelationError("cannot union relations over different spaces")
        for i, mask in enumerate(r.successors):
            out[i] |= mask
    return CellRelation(space, out)


def iterate_image(rel: CellRelation, a: CellSet, n: int) -> CellSet:
    """n-fold image of ``a``; n = 0 returns ``a`` unchanged."""
    if n < 0:
        raise RelationError("iterate_image requires n >= 0")
    mask = a.mask
    for _ in range(n):
        mask = rel.image_mask(mask)
    return CellSet.from_mask(mask)


@dataclass
class Trajectory:
    """Mask sequence of an iterated set with its detected cycle.

    ``masks[preperiod : preperiod + cycle]`` is the limit cycle.  Both fields
    are None when the horizon ran out before a repeat appeared.
    """

    masks: list[int]
    preperiod: Optional[int]
    cycle: Optional[int]

    @property
    def resolved(self) -> bool:
        return self.preperiod is not None

    def cycle_masks(self) -> list[int]:
        if not self.resolved:
            return []
        return self.masks[self.preperiod : self.preperiod + self.cycle]

    def mask_at(self, n: int) -> int:
        """Set at step n, reading through the detected cycle."""
        if n < len(self.masks):
            return self.masks[n]
        if not self.resolved:
            raise RelationError("trajectory unresolved beyond its horizon")
        return self.masks[self.preperiod + (n - self.preperiod) % self.cycle]


def mask_trajectory(
    step: Callable[[int], int], start: int, horizon: int
) -> Trajectory:
    """Iterate ``step`` from ``start`` with exact cycle detection.

    The cell-set lattice is finite, so the sequence is eventually periodic;
    ``horizon`` is only a hard cap against long pre-periods.
    """
    if horizon < 1:
        raise RelationError("horizon must be at least 1")
    seen = {start: 0}
    masks = [start]
    current = start
    for n in range(1, horizon + 1):
        current = step(current)
        hit = seen.get(current)
        if hit is not None:
            return Trajectory(masks, hit, n - hit)
        seen[current] = n
        masks.append(current)
    return Trajectory(masks, None, None)


def set_trajectory(rel: CellRelation, start: CellSet, horizon: int) -> Trajectory:
    return mask_trajectory(rel.image_mask, start.mask, horizon)
