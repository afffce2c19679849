"""Attraction traces, verdicts, the orbit metric, and consistency laws."""

import itertools
from fractions import Fraction

import pytest

from hutchlab.attractor import (
    attraction_trace,
    attractor_check,
    d_phi,
    equicontinuity_report,
    physical_attractor_check,
    proper_attractor_witness_search,
    uniform_attraction_bound,
)
from hutchlab.cells import CellSet
from hutchlab.errors import EmptySetError, RelationError
from hutchlab.maps import morse_smale, rasterize_map, rotation, times_m
from hutchlab.relation import identity_relation, inverse, set_trajectory
from hutchlab.space import build_space
from hutchlab.verdicts import Verdict


def _inverse_doubling(m):
    return inverse(rasterize_map(build_space("circle", m), times_m(2)))


def test_attractor_inverse_doubling_converges_at_ten():
    rel = _inverse_doubling(1024)
    trace = attraction_trace(rel, CellSet([0]), horizon=64)
    assert trace.converged_at == 10
    result = attractor_check(rel, horizon=4096, record_traces=False)
    assert result.verdict is Verdict.PROVED


def test_attractor_rotation_refuted_with_far_cycle():
    s8 = build_space("circle", 8)
    rel = rasterize_map(s8, rotation(Fraction(1, 8)))
    result = attractor_check(rel, seeds=[CellSet([0])], horizon=64)
    assert result.verdict is Verdict.REFUTED
    assert result.traces[-1].limit_distance() == Fraction(1, 2)


def test_attractor_identity_full_seed_converges_immediately():
    s8 = build_space("circle", 8)
    result = attractor_check(identity_relation(s8), seeds=[s8.full], horizon=8)
    assert result.verdict is Verdict.PROVED
    assert result.traces[0].converged_at == 0


def test_attractor_rejects_empty_seeds():
    s8 = build_space("circle", 8)
    with pytest.raises(EmptySetError):
        attractor_check(identity_relation(s8), seeds=[], horizon=8)
    with pytest.raises(EmptySetError):
        attractor_check(identity_relation(s8), seeds=[CellSet()], horizon=8)


def test_physical_examples():
    s64 = build_space("circle", 64)
    doubling = rasterize_map(s64, times_m(2))
    assert (
        physical_attractor_check(doubling, s64.cell_size, 256).verdict
        is Verdict.PROVED
    )
    s8 = build_space("circle", 8)
    rot = rasterize_map(s8, rotation(Fraction(1, 8)))
    result = physical_attractor_check(rot, s8.cell_size, 64)
    assert result.verdict is Verdict.REFUTED
    assert result.refuted_open is not None


def test_proper_witness_identity_and_rotation_found():
    s8 = build_space("circle", 8)
    ident = identity_relation(s8)
    found = proper_attractor_witness_search(
        ident, [[CellSet([0])] * 4], [CellSet([0])], Fraction(3, 16), 32
    )
    assert found is not None and found.recurring
    assert found.hits[:3] == [0, 1, 2]  # every step is a hit

    rot = rasterize_map(s8, rotation(Fraction(1, 8)))
    found_rot = proper_attractor_witness_search(
        rot, [[CellSet([0])] * 4], [CellSet([0])], Fraction(3, 16), 64, min_hits=3
    )
    assert found_rot is not None and found_rot.recurring


def test_proper_witness_none_for_inverse_doubling():
    rel = _inverse_doubling(64)
    space = rel.space
    found = proper_attractor_witness_search(
        rel,
        [[CellSet([0])] * 4, [CellSet([c]) for c in range(0, 64, 8)]],
        [CellSet([0]), CellSet([5]), CellSet([0, 32])],
        space.cell_size + space.cell_size / 2,
        64,
        min_hits=3,
    )
    assert found is None


def test_proper_witness_rejects_full_candidate():
    s8 = build_space("circle", 8)
    with pytest.raises(RelationError):
        proper_attractor_witness_search(
            identity_relation(s8), [[s8.full]], [s8.full], Fraction(3, 16), 8
        )


def test_d_phi_examples():
    s8 = build_space("circle", 8)
    ident = identity_relation(s8)
    for i, j in itertools.product(range(8), repeat=2):
        assert d_phi(ident, i, j, 5) == s8.metric(i, j)
    rot = rasterize_map(s8, rotation(Fraction(1, 8)))
    assert d_phi(rot, 2, 5, 100) == s8.metric(2, 5)
    # adjacent cells under doubling at M=64: the independent enumeration
    # of both arc orbits puts the worst separation at step 5
    s64 = build_space("circle", 64)
    doubling = rasterize_map(s64, times_m(2))
    worst = Fraction(0)
    a, b = CellSet([0]), CellSet([1])
    from hutchlab.space import hausdorff

    for _ in range(7):
        worst = max(worst, hausdorff(s64, a, b))
        a, b = (
            CellSet.from_mask(doubling.image_mask(a.mask)),
            CellSet.from_mask(doubling.image_mask(b.mask)),
        )
    assert d_phi(doubling, 0, 1, 6) == worst == Fraction(1, 4)


def test_d_phi_monotone_in_depth():
    s64 = build_space("circle", 64)
    doubling = rasterize_map(s64, times_m(2))
    values = [d_phi(doubling, 0, 1, n) for n in range(7)]
    assert all(b >= a for a, b in zip(values, values[1:]))


def test_d_phi_metric_axioms_m8():
    s8 = build_space("circle", 8)
    for rel in (
        rasterize_map(s8, times_m(2)),
        rasterize_map(s8, rotation(Fraction(1, 3))),
        rasterize_map(s8, morse_smale(Fraction(1, 8))),
    ):
        for n in range(7):
            table = {
                (i, j): d_phi(rel, i, j, n)
                for i in range(8)
                for j in range(8)
            }
            for i in range(8):
                assert table[i, i] == 0
                for j in range(8):
                    assert table[i, j] == table[j, i]
            for i, j, k in itertools.product(range(8), repeat=3):
                assert table[i, k] <= table[i, j] + table[j, k]


def test_equicontinuity_examples():
    s8 = build_space("circle", 8)
    rot = rasterize_map(s8, rotation(Fraction(1, 8)))
    report = equicontinuity_report(rot, 8, Fraction(1, 4))
    assert report.equicontinuous_cells == s8.full
    assert report.sensitivity_lower_bound == s8.cell_size

    s64 = build_space("circle", 64)
    doubling = rasterize_map(s64, times_m(2))
    report_d = equicontinuity_report(doubling, 6, Fraction(1, 4))
    assert len(report_d.equicontinuous_cells) == 0
    assert report_d.sensitivity_lower_bound >= Fraction(1, 4)

    ident = identity_relation(s8)
    report_i = equicontinuity_report(ident, 4, Fraction(1, 4))
    assert report_i.equicontinuous_cells == s8.full


def test_uniform_attraction_bound_examples():
    rel = _inverse_doubling(1024)
    assert uniform_attraction_bound(rel, 4096, Fraction(1, 1024)) == 10
    s8 = build_space("circle", 8)
    rot = rasterize_map(s8, rotation(Fraction(1, 8)))
    assert uniform_attraction_bound(rot, 64, Fraction(1, 8)) is None


def test_attractor_implies_physical_and_uniform_bound():
    # the only gallery-style systems proving attraction with tolerance 0
    for m in (8, 64):
        rel = _inverse_doubling(m)
        att = attractor_check(rel, horizon=4 * m, record_traces=False)
        assert att.verdict is Verdict.PROVED
        phys = physical_attractor_check(rel, rel.space.cell_size, 4 * m)
        assert phys.verdict is Verdict.PROVED
        assert uniform_attraction_bound(rel, 4 * m, rel.space.cell_size) is not None
        found = proper_attractor_witness_search(
            rel,
            [[CellSet([c]) for c in range(0, m, max(1, m // 8))]],
            [CellSet([0])],
            rel.space.cell_size * Fraction(3, 2),
            4 * m,
            min_hits=3,
        )
        assert found is None


def test_attractor_implies_equicontinuity_at_matched_scale():
    # converged-phase distances are zero, so the matched scale is two cells
    for m in (8, 64):
        rel = _inverse_doubling(m)
        report = equicontinuity_report(rel, 2 * m, 2 * rel.space.cell_size)
        assert report.equicontinuous_cells == rel.space.full


def test_attractor_agrees_with_open_intersection_form():
    # convergence to the full space is the same as eventually always
    # meeting every basis open, evaluated through the detected cycle
    s8 = build_space("circle", 8)
    rels = [
        rasterize_map(s8, times_m(2)),
        _inverse_doubling(8),
        rasterize_map(s8, rotation(Fraction(1, 8))),
        identity_relation(s8),
    ]
    for rel in rels:
        att = attractor_check(rel, horizon=64, record_traces=False).verdict
        intersect_everywhere = True
        for seed in range(8):
            traj = set_trajectory(rel, CellSet([seed]), 64)
            for w in range(8):
                if any((m >> w) & 1 == 0 for m in traj.cycle_masks()):
                    intersect_everywhere = False
        assert (att is Verdict.PROVED) == intersect_everywhere
