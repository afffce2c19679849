"""Constructive backward orbits over the inverse limit of an exact system.

Both constructions require exactness at resolution (checked up front): then
every cell has preimage chains reaching any target, so a backward orbit can
visit every basis open (dense image) or repeatedly approach a partner orbit
(vanishing inferior separation).  The constructions also work for surjective
relations that are not rasterized maps; the orbit records make no stronger
claim than cell membership.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .cells import iter_bits
from .errors import EmptySetError, ExactnessRequiredError, HorizonError, RelationError
from .relation import CellRelation, inverse
from .space import basis
from .topology import exactness_check
from .verdicts import Verdict


@dataclass
class BackwardOrbit:
    """Cells x_0, x_{-1}, ..., x_{-D} with x_{-i} in the image of x_{-i-1}."""

    cells: list[int]

    @property
    def depth(self) -> int:
        return len(self.cells) - 1

    def verify(self, rel: CellRelation) -> bool:
        for i in range(len(self.cells) - 1):
            if not (rel.successors[self.cells[i + 1]] >> self.cells[i]) & 1:
                return False
        return True


@dataclass
class DensityReport:
    density_radius: Fraction  # smallest strict ball radius covering the space
    targets_reached: int
    depth: int


def _require_exact(rel: CellRelation, basis_radius: Fraction, horizon: int) -> None:
    result = exactness_check(rel, basis_radius, horizon)
    if result.verdict is not Verdict.PROVED:
        raise ExactnessRequiredError("requires-exactness")


def _lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _backfill(
    rel: CellRelation, layers: list[int], deep_cell: int
) -> list[int]:
    """Cells x_{-(d+1)} .. x_{-(d+j)} linking the current tail to deep_cell.

    ``layers[k]`` holds the cells from which the tail is forward-reachable in
    exactly k steps; the deep cell sits in layers[j].  Intermediate cells are
    chosen lowest-index for determinism.
    """
    j = len(layers) - 1
    segment = [deep_cell]
    current = deep_cell
    for k in range(j - 1, 0, -1):
        options = rel.successors[current] & layers[k]
        if options == 0:
            raise RelationError("backfill broke: inverse layers inconsistent")
        current = _lowest_bit(options)
        segment.append(current)
    segment.reverse()  # shallow first: x_{-(d+1)} .. x_{-(d+j)}
    return segment


def backward_dense_orbit(
    rel: CellRelation,
    x0: int,
    basis_radius: Fraction,
    per_target_horizon: int,
    exactness_horizon: Optional[int] = None,
) -> tuple[BackwardOrbit, DensityReport]:
    """Backward orbit from x0 whose cell set visits every basis open."""
    space = rel.space
    if exactness_horizon is None:
        exactness_horizon = max(4 * space.cell_count, 64)
    _require_exact(rel, basis_radius, exactness_horizon)
    inv = inverse(rel)
    orbit = [x0]
    tail = x0
    reached = 0
    for target in basis(space, basis_radius):
        if (target.mask >> tail) & 1:
            reached += 1  # the current tail already sits inside the target
            continue
        layers = [1 << tail]
        segment = None
        for _ in range(per_target_horizon):
            layers.append(inv.image_mask(layers[-1]))
            hit = layers[-1] & target.mask
            if hit:
                segment = _backfill(rel, layers, _lowest_bit(hit))
                break
        if segment is None:
            raise HorizonError(
                f"target {target!r} unreachable within {per_target_horizon} backward steps",
                partial=BackwardOrbit(orbit),
            )
        orbit.extend(segment)
        tail = orbit[-1]
        reached += 1
    mask = 0
    for c in orbit:
        mask |= 1 << c
    density = Fraction(space.covering_radius_units(mask) + 1, space.unit_den)
    return BackwardOrbit(orbit), DensityReport(density, reached, len(orbit) - 1)


def paired_backward_orbits(
    rel: CellRelation,
    x0: int,
    y0: int,
    epsilon_schedule: Sequence[Fraction],
    per_target_horizon: int,
    basis_radius: Optional[Fraction] = None,
    exactness_horizon: Optional[int] = None,
) -> tuple[BackwardOrbit, BackwardOrbit, list[Fraction]]:
    """Extend two backward orbits so their entries approach each other.

    At the k-th checkpoint the orbits reach a common depth where the pair
    distance is at most epsilon_schedule[k]; the achieved distances are
    returned alongside both orbits.
    """
    space = rel.space
    schedule = [Fraction(e) for e in epsilon_schedule]
    if not schedule:
        raise EmptySetError("epsilon schedule must be non-empty")
    if any(e <= 0 for e in schedule):
        raise RelationError("epsilons must be positive")
    if any(later >= earlier for earlier, later in zip(schedule, schedule[1:])):
        raise RelationError("epsilon schedule must be strictly decreasing")
    if basis_radius is None:
        basis_radius = space.cell_size
    if exactness_horizon is None:
        exactness_horizon = max(4 * space.cell_count, 64)
    _require_exact(rel, basis_radius, exactness_horizon)
    inv = inverse(rel)
    orbit_x = [x0]
    orbit_y = [y0]
    achieved: list[Fraction] = []
    for eps in schedule:
        allowed = eps * space.unit_den  # pair distance <= eps in units
        tail_x = orbit_x[-1]
        tail_y = orbit_y[-1]
        d0 = space.dist_units(tail_x, tail_y)
        if d0 <= allowed:
            achieved.append(Fraction(d0, space.unit_den))
            continue
        layers_x = [1 << tail_x]
        layers_y = [1 << tail_y]
        found = None
        for _ in range(per_target_horizon):
            layers_x.append(inv.image_mask(layers_x[-1]))
            layers_y.append(inv.image_mask(layers_y[-1]))
            for cx in iter_bits(layers_x[-1]):
                best = None
                for cy in iter_bits(layers_y[-1]):
                    d = space.dist_units(cx, cy)
                    if d <= allowed and (best is None or d < best[1]):
                        best = (cy, d)
                        if d == 0:
                            break
                if best is not None:
                    found = (cx, best[0], best[1])
                    break
            if found:
                break
        if found is None:
            raise HorizonError(
                f"checkpoint epsilon {eps} unreachable within {per_target_horizon} steps",
                partial=(BackwardOrbit(orbit_x), BackwardOrbit(orbit_y)),
            )
        cx, cy, d = found
        orbit_x.extend(_backfill(rel, layers_x[: len(layers_x)], cx))
        orbit_y.extend(_backfill(rel, layers_y[: len(layers_y)], cy))
        achieved.append(Fraction(d, space.unit_den))
    return BackwardOrbit(orbit_x), BackwardOrbit(orbit_y), achieved
