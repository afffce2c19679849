"""Hutchinson operator construction, word images, minimality, options."""

from fractions import Fraction

import pytest

from hutchlab.cells import CellSet
from hutchlab.errors import DescriptorError
from hutchlab.ifs import (
    IfsOptions,
    IfsSystem,
    hutchinson,
    minimality_check,
    repelling_cell_certificate,
    totally_minimal_check,
    word_image,
)
from hutchlab.maps import (
    identity_map,
    morse_smale,
    rasterize_map,
    rotation,
    times_m,
    torus_shear_1,
    torus_shear_2,
)
from hutchlab.relation import compose, identity_relation, image
from hutchlab.space import build_space
from hutchlab.verdicts import Verdict


def test_hutchinson_identity_and_single_map():
    s8 = build_space("circle", 8)
    assert hutchinson(IfsSystem(s8, (identity_map(),))) == identity_relation(s8)
    assert hutchinson(IfsSystem(s8, (times_m(2),))) == rasterize_map(s8, times_m(2))


def test_hutchinson_grid_rotation_is_pure_shift():
    s8 = build_space("circle", 8)
    rel = hutchinson(IfsSystem(s8, (rotation(Fraction(1, 8)),)))
    assert all(rel.successor_set(i) == CellSet([(i + 1) % 8]) for i in range(8))


def test_hutchinson_torus_shears_half_point():
    torus = build_space("torus", 4)
    rel = hutchinson(IfsSystem(torus, (torus_shear_1(), torus_shear_2())))
    center = torus.cell_at(2, 2)
    assert rel.successor_set(center) == CellSet(
        [torus.cell_at(2, 0), torus.cell_at(0, 2)]
    )


def test_word_image_examples():
    torus = build_space("torus", 4)
    shears = IfsSystem(torus, (torus_shear_1(), torus_shear_2()))
    center = CellSet([torus.cell_at(2, 2)])
    assert word_image(shears, (), center) == center
    only_first = IfsSystem(torus, (torus_shear_1(),))
    assert word_image(only_first, (1, 1), center) == center
    half_zero = CellSet([torus.cell_at(2, 0)])
    assert word_image(shears, (2,), half_zero) == half_zero
    with pytest.raises(DescriptorError):
        word_image(shears, (3,), center)


def test_options_require_invertible_maps():
    s8 = build_space("circle", 8)
    with pytest.raises(DescriptorError):
        IfsSystem(s8, (times_m(2),), IfsOptions(symmetric_closure=True))
    with pytest.raises(DescriptorError):
        IfsSystem(s8, (times_m(2),), IfsOptions(use_inverse_family=True))


def test_symmetric_closure_contains_identity_in_two_steps():
    s64 = build_space("circle", 64)
    system = IfsSystem(
        s64, (rotation(Fraction(21, 64)),), IfsOptions(symmetric_closure=True)
    )
    rel = hutchinson(system)
    two_step = compose(rel, rel)
    for i in range(64):
        assert i in two_step.successor_set(i)


def test_adjoin_identity_iterates_as_running_union():
    s8 = build_space("circle", 8)
    base = rasterize_map(s8, rotation(Fraction(3, 8)))
    rel = hutchinson(
        IfsSystem(s8, (rotation(Fraction(3, 8)),), IfsOptions(adjoin_identity=True))
    )
    current = CellSet([1])
    running = CellSet([1])
    for _ in range(12):
        current = image(rel, current)
        running = running | image(base, running)
        assert current == running


def test_minimality_examples():
    s8 = build_space("circle", 8)
    assert (
        minimality_check(IfsSystem(s8, (rotation(Fraction(1, 8)),)), "forward", 64)
        is Verdict.PROVED
    )
    assert (
        minimality_check(IfsSystem(s8, (identity_map(),)), "forward", 64)
        is Verdict.REFUTED
    )
    s256 = build_space("circle", 256)
    mixed = IfsSystem(s256, (morse_smale(Fraction(1, 8)), rotation(Fraction(355, 1130))))
    assert minimality_check(mixed, "forward", 1024) is Verdict.PROVED


def test_minimality_validation():
    s8 = build_space("circle", 8)
    system = IfsSystem(s8, (rotation(Fraction(1, 8)),))
    with pytest.raises(Exception):
        minimality_check(system, "forward", 0)
    with pytest.raises(DescriptorError):
        minimality_check(IfsSystem(s8, (times_m(2),)), "backward", 64)


def test_totally_minimal_rotation_pair_small():
    # shifts 3 and 3+35 do not fit M=8; use the scaled pair on M=24 with
    # offset 7 (coprime to 2 and 3) so powers up to 4 stay minimal
    s24 = build_space("circle", 24)
    pair = IfsSystem(s24, (rotation(Fraction(5, 24)), rotation(Fraction(12, 24))))
    # offset 7 between shifts 5 and 12
    assert totally_minimal_check(pair, "forward", 256, bound=4) is Verdict.PROVED
    assert totally_minimal_check(pair, "backward", 256, bound=4) is Verdict.PROVED


def test_repelling_certificate():
    s512 = build_space("circle", 512)
    rel = rasterize_map(s512, morse_smale(Fraction(1, 8)))
    cert = repelling_cell_certificate(rel, 0)
    assert cert is not None
    assert 0 in cert
    img = rel.image_mask(cert.mask)
    assert cert.mask & ~img == 0 and img != cert.mask
    # the attracting fixed point at 1/2 admits no such ball
    assert repelling_cell_certificate(rel, 256) is None
