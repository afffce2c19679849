"""Discretizations of the compact metric spaces the workbench operates on.

A space of kind ``circle``/``interval`` with resolution M is the partition of
the unit circle/interval into M half-open cells ``[i/M, (i+1)/M)``.  Kind
``torus`` with resolution N is the invariant rational lattice
``(1/N)Z^2 / Z^2`` (N*N cells, one per lattice point), carrying the maximum
of the two coordinate circle metrics.  Kind ``finite`` is M abstract points
with the discrete 0/1 metric.

All distances between cells are exact rationals with a fixed denominator per
space (``unit_den``).  Internally distances are handled as integer multiples
of ``1/unit_den`` ("units") so comparisons never touch floating point.
"""

from __future__ import annotations

import math
import os
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cells import CellSet, iter_bits
from .errors import EmptySetError, ResourceCapError, SpaceError

CIRCLE = "circle"
TORUS = "torus"
INTERVAL = "interval"
FINITE = "finite"

KINDS = (CIRCLE, TORUS, INTERVAL, FINITE)

MAX_CELLS_ENV = "HUTCHLAB_MAX_CELLS"
DEFAULT_MAX_CELLS = 2**20


def max_cells_cap() -> int:
    raw = os.environ.get(MAX_CELLS_ENV)
    if raw is None:
        return DEFAULT_MAX_CELLS
    try:
        cap = int(raw)
    except ValueError as exc:
        raise SpaceError(f"{MAX_CELLS_ENV} must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise SpaceError(f"{MAX_CELLS_ENV} must be positive")
    return cap


@dataclass(frozen=True)
class DiscreteSpace:
    """An exact cell decomposition with a cell-center metric."""

    kind: str
    resolution: int

    @property
    def cell_count(self) -> int:
        return self.resolution**2 if self.kind == TORUS else self.resolution

    @property
    def unit_den(self) -> int:
        """Denominator of the metric: distances are k/unit_den."""
        if self.kind == FINITE:
            return 1
        return self.resolution

    @property
    def cell_size(self) -> Fraction:
        return Fraction(1, self.unit_den)

    @property
    def diameter_units(self) -> int:
        if self.kind == CIRCLE or self.kind == TORUS:
            return self.resolution // 2
        if self.kind == INTERVAL:
            return self.resolution - 1
        return 1 if self.cell_count > 1 else 0

    @property
    def diameter(self) -> Fraction:
        return Fraction(self.diameter_units, self.unit_den)

    @property
    def full(self) -> CellSet:
        return CellSet.from_mask(self.full_mask)

    @property
    def full_mask(self) -> int:
        return (1 << self.cell_count) - 1

    # torus cells are indexed x * N + y
    def coords(self, cell: int) -> tuple[int, int]:
        n = self.resolution
        return divmod(cell, n)

    def cell_at(self, x: int, y: int) -> int:
        n = self.resolution
        return (x % n) * n + (y % n)

    def dist_units(self, i: int, j: int) -> int:
        kind = self.kind
        if kind == CIRCLE:
            d = abs(i - j)
            return min(d, self.resolution - d)
        if kind == INTERVAL:
            return abs(i - j)
        if kind == TORUS:
            n = self.resolution
            xi, yi = divmod(i, n)
            xj, yj = divmod(j, n)
            dx = abs(xi - xj)
            dy = abs(yi - yj)
            return max(min(dx, n - dx), min(dy, n - dy))
        return 0 if i == j else 1

    def metric(self, i: int, j: int) -> Fraction:
        self._check_cell(i)
        self._check_cell(j)
        return Fraction(self.dist_units(i, j), self.unit_den)

    def _check_cell(self, i: int) -> None:
        if not 0 <= i < self.cell_count:
            raise SpaceError(f"cell index {i} outside [0, {self.cell_count})")

    def strict_radius_units(self, radius: Fraction) -> int:
        """Largest unit count strictly below ``radius`` (>= -1)."""
        q = Fraction(radius) * self.unit_den
        return math.ceil(q) - 1

    # -- distance machinery -------------------------------------------------

    def distance_field_units(self, mask: int) -> list[int]:
        """For every cell, the unit distance to the nearest cell of ``mask``.

        ``mask`` must be non-empty.
        """
        if mask == 0:
            raise EmptySetError("distance field undefined on the empty set")
        m = self.cell_count
        kind = self.kind
        if kind == FINITE:
            return [0 if (mask >> c) & 1 else 1 for c in range(m)]
        if kind == CIRCLE:
            inf = m + 1
            field = [0 if (mask >> c) & 1 else inf for c in range(m)]
            for _ in range(2):  # two wrap passes settle the cycle
                for c in range(m):
                    prev = field[(c - 1) % m] + 1
                    if prev < field[c]:
                        field[c] = prev
                for c in range(m - 1, -1, -1):
                    nxt = field[(c + 1) % m] + 1
                    if nxt < field[c]:
                        field[c] = nxt
            return field
        if kind == INTERVAL:
            inf = m + 1
            field = [0 if (mask >> c) & 1 else inf for c in range(m)]
            for c in range(1, m):
                field[c] = min(field[c], field[c - 1] + 1)
            for c in range(m - 2, -1, -1):
                field[c] = min(field[c], field[c + 1] + 1)
            return field
        # torus: Chebyshev distance = king-move BFS with wraparound
        n = self.resolution
        field = [-1] * m
        queue = deque()
        for c in iter_bits(mask):
            field[c] = 0
            queue.append(c)
        while queue:
            c = queue.popleft()
            d = field[c] + 1
            x, y = divmod(c, n)
            for dx in (-1, 0, 1):
                xx = (x + dx) % n
                base = xx * n
                for dy in (-1, 0, 1):
                    cc = base + (y + dy) % n
                    if field[cc] < 0:
                        field[cc] = d
                        queue.append(cc)
        return field

    def covering_radius_units(self, mask: int) -> int:
        """max over all cells of the unit distance to ``mask`` (d_H(mask, X))."""
        if mask == 0:
            raise EmptySetError("covering radius undefined on the empty set")
        if mask == self.full_mask:
            return 0
        if self.kind == CIRCLE:
            cells = list(iter_bits(mask))
            m = self.resolution
            best = 0
            prev = cells[-1] - m
            for c in cells:
                gap = c - prev - 1  # cells strictly between two members
                half = (gap + 1) // 2
                if half > best:
                    best = half
                prev = c
            return best
        if self.kind == INTERVAL:
            cells = list(iter_bits(mask))
            best = max(cells[0], self.resolution - 1 - cells[-1])
            for a, b in zip(cells, cells[1:]):
                half = (b - a) // 2
                if half > best:
                    best = half
            return best
        if self.kind == FINITE:
            return 1
        return max(self.distance_field_units(mask))

    def point_to_set_units(self, cell: int, mask: int) -> int:
        if mask == 0:
            raise EmptySetError("distance to the empty set is undefined")
        if (mask >> cell) & 1:
            return 0
        best = None
        for c in iter_bits(mask):
            d = self.dist_units(cell, c)
            if best is None or d < best:
                best = d
                if best == 0:
                    break
        return best


def build_space(kind: str, resolution: int) -> DiscreteSpace:
    """Construct a discretization; rejects invalid kinds/resolutions."""
    if kind not in KINDS:
        raise SpaceError(f"unsupported space kind {kind!r}; expected one of {KINDS}")
    if resolution < 2:
        raise SpaceError("resolution must be at least 2")
    space = DiscreteSpace(kind, resolution)
    cap = max_cells_cap()
    if space.cell_count > cap:
        raise ResourceCapError(
            f"{space.cell_count} cells exceed the cap of {cap} ({MAX_CELLS_ENV})"
        )
    return space


def hausdorff(space: DiscreteSpace, a: CellSet, b: CellSet) -> Fraction:
    """Hausdorff distance between two non-empty cell sets."""
    return Fraction(hausdorff_units(space, a.mask, b.mask), space.unit_den)


def hausdorff_units(space: DiscreteSpace, mask_a: int, mask_b: int) -> int:
    if mask_a == 0 or mask_b == 0:
        raise EmptySetError("hausdorff-undefined-on-empty")
    if mask_a == mask_b:
        return 0
    field_b = space.distance_field_units(mask_b)
    field_a = space.distance_field_units(mask_a)
    d = 0
    for c in iter_bits(mask_a):
        if field_b[c] > d:
            d = field_b[c]
    for c in iter_bits(mask_b):
        if field_a[c] > d:
            d = field_a[c]
    return d


@lru_cache(maxsize=None)
def _ball_mask(space: DiscreteSpace, center: int, h: int) -> int:
    """Cells at unit distance <= h from center (h may be negative: empty)."""
    if h < 0:
        return 0
    kind = space.kind
    if kind == CIRCLE:
        m = space.resolution
        if h * 2 + 1 >= m:
            return space.full_mask
        lo = (center - h) % m
        width = 2 * h + 1
        run = (1 << width) - 1
        mask = run << lo
        return (mask | (mask >> m)) & space.full_mask
    if kind == INTERVAL:
        m = space.resolution
        lo = max(0, center - h)
        hi = min(m - 1, center + h)
        return ((1 << (hi - lo + 1)) - 1) << lo
    if kind == TORUS:
        n = space.resolution
        if h * 2 + 1 >= n:
            return space.full_mask
        x, y = divmod(center, n)
        mask = 0
        for dx in range(-h, h + 1):
            base = ((x + dx) % n) * n
            for dy in range(-h, h + 1):
                mask |= 1 << (base + (y + dy) % n)
        return mask
    # finite
    if h >= 1:
        return space.full_mask
    return 1 << center


def ball(space: DiscreteSpace, center: int, radius: Fraction) -> CellSet:
    """All cells strictly within ``radius`` of ``center``; always contains it."""
    radius = Fraction(radius)
    if radius <= 0:
        raise SpaceError("ball radius must be positive")
    space._check_cell(center)
    return CellSet.from_mask(_ball_mask(space, center, space.strict_radius_units(radius)))


def basis(space: DiscreteSpace, radius: Fraction) -> list[CellSet]:
    """The finite basis at this resolution: one ball per cell center."""
    radius = Fraction(radius)
    if radius < space.cell_size:
        raise SpaceError("basis radius must be at least the cell size")
    h = space.strict_radius_units(radius)
    return [CellSet.from_mask(_ball_mask(space, c, h)) for c in range(space.cell_count)]


def coherent_tolerance(space: DiscreteSpace, radius: Fraction) -> Fraction:
    """Largest representable metric value strictly below ``radius``.

    Pairing a basis radius with this tolerance makes the mixing and
    physical-attractor tests quantify over exactly the same scale.
    """
    return Fraction(max(space.strict_radius_units(Fraction(radius)), 0), space.unit_den)
