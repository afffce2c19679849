"""Brute-force oracle sanity and engine agreement on small spaces."""

import random
from fractions import Fraction

import pytest

from hutchlab.attractor import attractor_check, physical_attractor_check
from hutchlab.errors import RelationError
from hutchlab.maps import rasterize_map, rotation, times_m
from hutchlab.oracle import (
    brute_attractor,
    brute_equicontinuous_everywhere,
    brute_exactness,
    brute_mixing,
    brute_physical,
    brute_property_lattice,
)
from hutchlab.relation import CellRelation, identity_relation, inverse
from hutchlab.space import build_space
from hutchlab.topology import exactness_check, mixing_check
from hutchlab.verdicts import Verdict


def test_brute_attractor_examples():
    s8 = build_space("circle", 8)
    assert brute_attractor(inverse(rasterize_map(s8, times_m(2)))) is Verdict.PROVED
    assert brute_attractor(rasterize_map(s8, rotation(Fraction(1, 8)))) is Verdict.REFUTED


def test_oracle_rejects_large_spaces():
    s16 = build_space("circle", 16)
    with pytest.raises(RelationError):
        brute_attractor(identity_relation(s16))


def test_all_relations_at_m2_have_consistent_lattice():
    s2 = build_space("circle", 2)
    for row0 in range(4):
        for row1 in range(4):
            record = brute_property_lattice(CellRelation(s2, [row0, row1]))
            assert record.violations == [], (row0, row1, record.violations)


def test_identity_m3_all_refuted_consistently():
    s3 = build_space("circle", 3)
    record = brute_property_lattice(identity_relation(s3))
    assert record.attractor is Verdict.REFUTED
    assert record.physical is Verdict.REFUTED
    assert record.mixing is Verdict.REFUTED
    assert record.exact_inverse is Verdict.REFUTED
    assert record.violations == []


def test_identity_m1_style_trivial_case():
    # the 2-cell full relation attracts with uniform behavior
    s2 = build_space("circle", 2)
    full_rel = CellRelation(s2, [0b11, 0b11])
    record = brute_property_lattice(full_rel)
    assert record.attractor is Verdict.PROVED
    assert record.violations == []


def test_equicontinuity_oracle_on_inverse_doubling():
    s8 = build_space("circle", 8)
    rel = inverse(rasterize_map(s8, times_m(2)))
    assert brute_equicontinuous_everywhere(rel, 2 * s8.cell_size)


def test_engine_matches_oracle_on_sampled_relations():
    s5 = build_space("circle", 5)
    rng = random.Random(909)
    for _ in range(800):
        rel = CellRelation(s5, [rng.randrange(1, 32) for _ in range(5)])
        assert brute_attractor(rel) == attractor_check(
            rel, horizon=40, record_traces=False
        ).verdict
        assert brute_physical(rel) == physical_attractor_check(
            rel, s5.cell_size, 40
        ).verdict
        assert brute_mixing(rel) == mixing_check(rel, s5.cell_size, 40).verdict
        assert brute_exactness(rel) == exactness_check(rel, s5.cell_size, 40).verdict


def test_lattice_sample_at_m5():
    s5 = build_space("circle", 5)
    rng = random.Random(77)
    for _ in range(400):
        rel = CellRelation(s5, [rng.randrange(1, 32) for _ in range(5)])
        assert brute_property_lattice(rel).violations == []
