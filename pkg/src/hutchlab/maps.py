"""Built-in map descriptors and their exact rasterization to cell relations.

Circle maps act on the half-open cells [i/M, (i+1)/M): the successor set of a
cell is every cell its true image meets, computed in rational arithmetic (arc
endpoints for the affine maps, monotone endpoint enclosures for the sine
perturbation).  The torus shears preserve the rational lattice the torus kind
discretizes, so they rasterize as the induced lattice bijection with zero
fattening.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from .enclosure import PI_HI, sin2pi_bounds
from .errors import DescriptorError
from .relation import CellRelation
from .space import CIRCLE, TORUS, DiscreteSpace

ROTATION = "rotation"
TIMES_M = "times_m"
TORUS_SHEAR_1 = "torus_shear_1"
TORUS_SHEAR_2 = "torus_shear_2"
MORSE_SMALE = "morse_smale"
IDENTITY = "identity"

_NAMES = (ROTATION, TIMES_M, TORUS_SHEAR_1, TORUS_SHEAR_2, MORSE_SMALE, IDENTITY)
_INVERTIBLE = {
    ROTATION: True,
    TIMES_M: False,
    TORUS_SHEAR_1: True,
    TORUS_SHEAR_2: True,
    MORSE_SMALE: True,
    IDENTITY: True,
}


@dataclass(frozen=True)
class MapDescriptor:
    """A named map with one optional parameter."""

    name: str
    param: Union[Fraction, int, None] = None

    def __post_init__(self):
        if self.name not in _NAMES:
            raise DescriptorError(f"unknown map descriptor {self.name!r}")
        if self.name == ROTATION:
            alpha = self.param
            if not isinstance(alpha, Fraction) or not 0 <= alpha < 1:
                raise DescriptorError("rotation angle must be a rational in [0, 1)")
        elif self.name == TIMES_M:
            if not isinstance(self.param, int) or self.param < 2:
                raise DescriptorError("times_m factor must be an integer >= 2")
        elif self.name == MORSE_SMALE:
            mu = self.param
            if not isinstance(mu, Fraction) or mu <= 0 or 2 * mu * PI_HI >= 1:
                raise DescriptorError(
                    "morse_smale amplitude must be rational in (0, 1/(2*pi))"
                )
        elif self.param is not None:
            raise DescriptorError(f"{self.name} takes no parameter")

    @property
    def invertible(self) -> bool:
        return _INVERTIBLE[self.name]

    def kinds(self) -> tuple[str, ...]:
        if self.name in (ROTATION, TIMES_M, MORSE_SMALE):
            return (CIRCLE,)
        if self.name in (TORUS_SHEAR_1, TORUS_SHEAR_2):
            return (TORUS,)
        return ("circle", "torus", "interval", "finite")

    def __str__(self) -> str:
        return self.name if self.param is None else f"{self.name}({self.param})"


def rotation(alpha) -> MapDescriptor:
    return MapDescriptor(ROTATION, Fraction(alpha))


def times_m(m: int) -> MapDescriptor:
    return MapDescriptor(TIMES_M, m)


def torus_shear_1() -> MapDescriptor:
    return MapDescriptor(TORUS_SHEAR_1)


def torus_shear_2() -> MapDescriptor:
    return MapDescriptor(TORUS_SHEAR_2)


def morse_smale(mu) -> MapDescriptor:
    return MapDescriptor(MORSE_SMALE, Fraction(mu))


def identity_map() -> MapDescriptor:
    return MapDescriptor(IDENTITY)


def _arc_mask(m: int, first: int, last: int) -> int:
    """Mask of circle cells first..last inclusive (indices may exceed m)."""
    width = last - first + 1
    if width >= m:
        return (1 << m) - 1
    run = ((1 << width) - 1) << (first % m)
    return (run | (run >> m)) & ((1 << m) - 1)


def _morse_smale_value(mu: Fraction, x: Fraction):
    """f(x) = x + mu*sin(2*pi*x); exact Fraction or (lo, hi) enclosure."""
    lo, hi = sin2pi_bounds(x)
    if lo == hi:
        return x + mu * lo
    return (x + mu * lo, x + mu * hi)


def _cell_floor(m: int, value, *, outer_low: bool) -> int:
    """Cell index of a point given exactly or as an enclosure.

    For enclosures that straddle a cell boundary the outer side is taken so
    the rasterized image can only grow, never lose a reachable cell.
    """
    if isinstance(value, Fraction):
        return math.floor(value * m)
    lo, hi = value
    a = math.floor(lo * m)
    b = math.floor(hi * m)
    return a if outer_low else b


@lru_cache(maxsize=None)
def rasterize_map(space: DiscreteSpace, descriptor: MapDescriptor) -> CellRelation:
    """Cells met by the image of each cell under the descriptor's map."""
    if space.kind not in descriptor.kinds():
        raise DescriptorError(
            f"{descriptor} is not defined on a {space.kind} space"
        )
    m = space.cell_count

    if descriptor.name == IDENTITY:
        return CellRelation(space, [1 << i for i in range(m)])

    if descriptor.name == ROTATION:
        shift = descriptor.param * m  # image of [i, i+1) is [i+shift, i+1+shift)
        rows = []
        for i in range(m):
            lo = i + shift
            first = math.floor(lo)
            last = math.ceil(lo + 1) - 1
            rows.append(_arc_mask(m, first, last))
        return CellRelation(space, rows)

    if descriptor.name == TIMES_M:
        k = descriptor.param
        rows = [_arc_mask(m, k * i, k * i + k - 1) for i in range(m)]
        return CellRelation(space, rows)

    if descriptor.name in (TORUS_SHEAR_1, TORUS_SHEAR_2):
        n = space.resolution
        rows = [0] * m
        for i in range(m):
            x, y = divmod(i, n)
            if descriptor.name == TORUS_SHEAR_1:
                target = space.cell_at(x, y + x)
            else:
                target = space.cell_at(x + y, y)
            rows[i] = 1 << target
        return CellRelation(space, rows)

    # morse_smale: increasing homeomorphism of [0, 1] fixing both endpoints,
    # so the image of [k/M, (k+1)/M) is [f(k/M), f((k+1)/M)) with no wrap.
    mu = descriptor.param
    values = [_morse_smale_value(mu, Fraction(k, m)) for k in range(m)]
    values.append(Fraction(1))
    rows = []
    for k in range(m):
        a = values[k]
        b = values[k + 1]
        first = _cell_floor(m, a, outer_low=True)
        if isinstance(b, Fraction) and (b * m).denominator == 1:
            last = int(b * m) - 1  # half-open end sitting exactly on a boundary
        else:
            last = _cell_floor(m, b, outer_low=False)
        rows.append(_arc_mask(m, first, min(last, m - 1)))
    return CellRelation(space, rows)


def map_point(descriptor: MapDescriptor, space: DiscreteSpace, x):
    """Evaluate the descriptor's map on a point, exactly where possible.

    Circle points are Fractions mod 1; torus points are lattice coordinate
    pairs.  morse_smale returns an enclosure pair when the value is
    irrational.  Used by the rasterization soundness tests.
    """
    if descriptor.name == IDENTITY:
        return x
    if descriptor.name == ROTATION:
        return (x + descriptor.param) % 1
    if descriptor.name == TIMES_M:
        return (x * descriptor.param) % 1
    if descriptor.name == MORSE_SMALE:
        v = _morse_smale_value(descriptor.param, Fraction(x) % 1)
        return v if isinstance(v, Fraction) else (v[0] % 1 if v[0] == v[1] else v)
    n = space.resolution
    i, j = x
    if descriptor.name == TORUS_SHEAR_1:
        return (i % n, (i + j) % n)
    return ((i + j) % n, j % n)


def descriptor_fattening(descriptor: MapDescriptor) -> int:
    """Extra cells the rasterization may add beyond the true image (0 = exact)."""
    return 0


def cell_of_circle_point(space: DiscreteSpace, x) -> Optional[int]:
    """Cell containing a circle point; None if an enclosure straddles cells."""
    m = space.cell_count
    if isinstance(x, Fraction):
        return math.floor((x % 1) * m) % m
    lo, hi = x
    a = math.floor(lo * m)
    b = math.floor(hi * m)
    return a % m if a == b else None
