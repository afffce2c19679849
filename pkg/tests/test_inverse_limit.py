"""Backward orbit constructions over exact systems."""

from fractions import Fraction

import pytest

from hutchlab.cells import CellSet
from hutchlab.errors import ExactnessRequiredError, RelationError
from hutchlab.inverse_limit import backward_dense_orbit, paired_backward_orbits
from hutchlab.maps import rasterize_map, times_m
from hutchlab.relation import identity_relation, inverse, iterate_image
from hutchlab.space import build_space


def _doubling(m):
    return rasterize_map(build_space("circle", m), times_m(2))


def test_dense_orbit_covers_everything():
    rel = _doubling(64)
    orbit, report = backward_dense_orbit(rel, 0, rel.space.cell_size, 6)
    assert orbit.verify(rel)
    assert orbit.cells[0] == 0
    assert report.density_radius == rel.space.cell_size
    assert report.targets_reached == 64
    assert orbit.depth <= 6 * 64


def test_dense_orbit_requires_exactness():
    s64 = build_space("circle", 64)
    with pytest.raises(ExactnessRequiredError, match="requires-exactness"):
        backward_dense_orbit(identity_relation(s64), 0, s64.cell_size, 6)


def test_preimage_layers_match_hand_enumeration():
    rel = _doubling(8)
    inv = inverse(rel)
    level2 = iterate_image(inv, CellSet([0]), 2)
    assert level2 == CellSet([0, 2, 4, 6])  # cell 4 enters at depth two


def test_forward_consistency_of_dense_orbit():
    rel = _doubling(32)
    orbit, _ = backward_dense_orbit(rel, 0, rel.space.cell_size, 5)
    # iterating i steps forward from x_{-i} recovers the starting cell
    for i in range(1, min(orbit.depth, 12) + 1):
        forward = iterate_image(rel, CellSet([orbit.cells[i]]), i)
        assert orbit.cells[0] in forward


def test_paired_orbits_meet_the_schedule():
    rel = _doubling(64)
    ox, oy, achieved = paired_backward_orbits(
        rel, 0, 32, [Fraction(1, 4), Fraction(1, 16), Fraction(1, 64)], 12
    )
    assert ox.verify(rel) and oy.verify(rel)
    assert ox.cells[0] == 0 and oy.cells[0] == 32
    assert ox.depth == oy.depth
    assert achieved[0] <= Fraction(1, 4)
    assert achieved[1] <= Fraction(1, 16)
    assert achieved[2] <= Fraction(1, 64)
    assert all(b <= a for a, b in zip(achieved, achieved[1:]))


def test_paired_orbits_equal_starts_give_zero():
    rel = _doubling(64)
    _, _, achieved = paired_backward_orbits(rel, 5, 5, [Fraction(1, 4)], 12)
    assert achieved == [Fraction(0)]


def test_paired_orbits_small_space():
    rel = _doubling(8)
    ox, oy, achieved = paired_backward_orbits(rel, 0, 4, [Fraction(1, 8)], 6)
    assert achieved[0] <= Fraction(1, 8)
    assert ox.verify(rel) and oy.verify(rel)


def test_schedule_validation():
    rel = _doubling(8)
    with pytest.raises(RelationError):
        paired_backward_orbits(rel, 0, 4, [Fraction(1, 8), Fraction(1, 4)], 6)
    with pytest.raises(RelationError):
        paired_backward_orbits(rel, 0, 4, [Fraction(0)], 6)
