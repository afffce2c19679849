"""Map descriptors and exact rasterization."""

import math
import random
from fractions import Fraction

import pytest

from hutchlab.cells import CellSet
from hutchlab.errors import DescriptorError
from hutchlab.maps import (
    MapDescriptor,
    cell_of_circle_point,
    identity_map,
    map_point,
    morse_smale,
    rasterize_map,
    rotation,
    times_m,
    torus_shear_1,
    torus_shear_2,
)
from hutchlab.space import build_space


def test_descriptor_validation():
    with pytest.raises(DescriptorError):
        rotation(Fraction(5, 4))
    with pytest.raises(DescriptorError):
        times_m(1)
    with pytest.raises(DescriptorError):
        morse_smale(Fraction(1, 2))  # not an increasing homeomorphism
    with pytest.raises(DescriptorError):
        MapDescriptor("unknown")
    assert not times_m(2).invertible
    assert rotation(Fraction(1, 3)).invertible


def test_descriptor_space_mismatch():
    with pytest.raises(DescriptorError):
        rasterize_map(build_space("circle", 8), torus_shear_1())
    with pytest.raises(DescriptorError):
        rasterize_map(build_space("torus", 4), times_m(2))


def test_doubling_rows():
    space = build_space("circle", 8)
    rel = rasterize_map(space, times_m(2))
    for i in range(8):
        assert rel.successor_set(i) == CellSet([(2 * i) % 8, (2 * i + 1) % 8])


def test_rotation_rows():
    space = build_space("circle", 8)
    grid = rasterize_map(space, rotation(Fraction(1, 8)))
    assert all(grid.successor_set(i) == CellSet([(i + 1) % 8]) for i in range(8))
    off_grid = rasterize_map(space, rotation(Fraction(1, 3)))
    for i in range(8):
        row = off_grid.successor_set(i)
        assert len(row) == 2  # the shifted arc straddles one boundary


def test_torus_shear_rows_are_the_lattice_map():
    space = build_space("torus", 4)
    sh1 = rasterize_map(space, torus_shear_1())
    sh2 = rasterize_map(space, torus_shear_2())
    center = space.cell_at(2, 2)
    assert sh1.successor_set(center) == CellSet([space.cell_at(2, 0)])
    assert sh2.successor_set(center) == CellSet([space.cell_at(0, 2)])
    for cell in range(16):
        x, y = space.coords(cell)
        assert sh1.successor_set(cell) == CellSet([space.cell_at(x, y + x)])
        assert sh2.successor_set(cell) == CellSet([space.cell_at(x + y, y)])


def test_morse_smale_rows_monotone_and_fixed_cells():
    space = build_space("circle", 64)
    rel = rasterize_map(space, morse_smale(Fraction(1, 8)))
    assert rel.total
    assert 0 in rel.successor_set(0)  # repelling fixed point at 0
    assert 32 in rel.successor_set(32)  # attracting fixed point at 1/2
    # increasing homeomorphism: row intervals are ordered and cover the circle
    union = 0
    for i in range(64):
        union |= rel.successors[i]
    assert union == space.full_mask


def _circle_soundness(space, descriptor, samples, rng):
    rel = rasterize_map(space, descriptor)
    m = space.cell_count
    for _ in range(samples):
        cell = rng.randrange(m)
        offset = Fraction(rng.randrange(1 << 20), 1 << 20)
        x = (Fraction(cell) + offset) / m
        fx = map_point(descriptor, space, x)
        target = cell_of_circle_point(space, fx)
        if target is None:
            lo, hi = fx
            targets = {math.floor(lo * m) % m, math.floor(hi * m) % m}
        else:
            targets = {target}
        for t in targets:
            assert t in rel.successor_set(cell), (descriptor, cell, x)


def _torus_soundness(space, descriptor, samples, rng):
    rel = rasterize_map(space, descriptor)
    n = space.resolution
    for _ in range(samples):
        i, j = rng.randrange(n), rng.randrange(n)
        fi, fj = map_point(descriptor, space, (i, j))
        assert space.cell_at(fi, fj) in rel.successor_set(space.cell_at(i, j))


def run_soundness_suite(samples: int) -> None:
    """Shared by the quick unit test and the acceptance criterion."""
    rng = random.Random(2024)
    circle = build_space("circle", 64)
    for descriptor in (
        identity_map(),
        rotation(Fraction(263, 840)),
        times_m(2),
        times_m(3),
        morse_smale(Fraction(1, 8)),
    ):
        _circle_soundness(circle, descriptor, samples, rng)
    torus = build_space("torus", 16)
    for descriptor in (torus_shear_1(), torus_shear_2(), identity_map()):
        _torus_soundness(torus, descriptor, samples, rng)


def test_rasterization_soundness_quick():
    run_soundness_suite(500)
