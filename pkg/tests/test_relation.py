"""Relation algebra: image, inverse, composition, iteration."""

import random
from fractions import Fraction

import pytest

from hutchlab.cells import CellSet
from hutchlab.errors import RelationError
from hutchlab.maps import rasterize_map, rotation, times_m
from hutchlab.relation import (
    CellRelation,
    compose,
    identity_relation,
    image,
    inverse,
    iterate_image,
    set_trajectory,
)
from hutchlab.space import build_space


def _doubling(m):
    return rasterize_map(build_space("circle", m), times_m(2))


def test_image_examples():
    s8 = build_space("circle", 8)
    ident = identity_relation(s8)
    assert image(ident, CellSet([2, 6])) == CellSet([2, 6])
    d8 = _doubling(8)
    assert image(d8, CellSet([1])) == CellSet([2, 3])
    assert image(d8, s8.full) == s8.full
    assert image(d8, CellSet()) == CellSet()


def test_image_distributes_over_union():
    d8 = _doubling(8)
    rng = random.Random(11)
    for _ in range(100):
        a = CellSet.from_mask(rng.randrange(256))
        b = CellSet.from_mask(rng.randrange(256))
        assert image(d8, a | b) == image(d8, a) | image(d8, b)


def test_inverse_examples():
    s8 = build_space("circle", 8)
    assert inverse(identity_relation(s8)) == identity_relation(s8)
    d8 = _doubling(8)
    inv = inverse(d8)
    # enumerate j with 2 in successors[j] = {2j, 2j+1 mod 8}: j in {1, 5}
    assert inv.successor_set(2) == CellSet([1, 5])
    assert inv.successor_set(5) == CellSet([2, 6])
    assert inverse(inv) == d8


def test_inverse_involution_random():
    s8 = build_space("circle", 8)
    rng = random.Random(5)
    for _ in range(50):
        rel = CellRelation(s8, [rng.randrange(256) for _ in range(8)])
        assert inverse(inverse(rel)) == rel


def test_compose_examples():
    s8 = build_space("circle", 8)
    d8 = _doubling(8)
    assert compose(identity_relation(s8), d8) == d8
    assert compose(d8, identity_relation(s8)) == d8
    twice = compose(d8, d8)
    assert twice.successor_set(0) == CellSet([0, 1, 2, 3])
    # inverse-then-forward keeps every cell reachable from itself
    back_forth = compose(inverse(d8), d8)
    for i in range(8):
        assert i in back_forth.successor_set(i)


def test_compose_space_mismatch():
    with pytest.raises(RelationError):
        compose(_doubling(8), _doubling(16))


def test_iterate_image_examples():
    s1024 = build_space("circle", 1024)
    d = rasterize_map(s1024, times_m(2))
    assert iterate_image(d, CellSet([0]), 0) == CellSet([0])
    assert iterate_image(d, CellSet([0]), 10) == s1024.full

    s8 = build_space("circle", 8)
    r3 = rasterize_map(s8, rotation(Fraction(3, 8)))
    assert iterate_image(r3, CellSet([0]), 5) == CellSet([7])


def test_iterate_monotone_in_seed():
    d = _doubling(16)
    rng = random.Random(2)
    for _ in range(50):
        a_mask = rng.randrange(1, 1 << 16)
        b_mask = a_mask | rng.randrange(1 << 16)
        for n in range(5):
            ia = iterate_image(d, CellSet.from_mask(a_mask), n)
            ib = iterate_image(d, CellSet.from_mask(b_mask), n)
            assert ia <= ib


def test_trajectories_always_resolve():
    s8 = build_space("circle", 8)
    rng = random.Random(13)
    for _ in range(100):
        rel = CellRelation(s8, [rng.randrange(256) for _ in range(8)])
        start = CellSet.from_mask(rng.randrange(1, 256))
        traj = set_trajectory(rel, start, horizon=300)
        assert traj.resolved
        # reading through the cycle reproduces direct iteration
        direct = start
        for n in range(12):
            assert traj.mask_at(n) == direct.mask
            direct = image(rel, direct)
