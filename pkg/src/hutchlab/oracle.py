"""Naive brute-force verifier for tiny spaces.

Everything here favors transparency over speed: subset iteration detects
cycles by scanning the visited history, attraction is checked over *all*
non-empty subsets, and distances are computed by double loops.  The oracle
is the provenance source for the frozen expected values in the test suite
and the referee for the main engine on small spaces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import RelationError
from .relation import CellRelation, inverse
from .verdicts import Verdict

MAX_ORACLE_CELLS = 12


def _guard(rel: CellRelation) -> None:
    if rel.space.cell_count > MAX_ORACLE_CELLS:
        raise RelationError(
            f"oracle handles at most {MAX_ORACLE_CELLS} cells, "
            f"got {rel.space.cell_count}"
        )


def _image(rel: CellRelation, mask: int) -> int:
    out = 0
    for c in range(rel.space.cell_count):
        if (mask >> c) & 1:
            out |= rel.successors[c]
    return out


def _history(rel: CellRelation, mask: int) -> tuple[list[int], int]:
    """All iterates until the first repeat; returns (history, preperiod)."""
    history = [mask]
    current = mask
    while True:
        current = _image(rel, current)
        if current in history:
            return history, history.index(current)
        history.append(current)


def _set_distance_to_full(rel: CellRelation, mask: int) -> Fraction:
    space = rel.space
    if mask == 0:
        return space.diameter + space.cell_size
    worst = Fraction(0)
    for c in range(space.cell_count):
        best = None
        for d in range(space.cell_count):
            if (mask >> d) & 1:
                v = space.metric(c, d)
                if best is None or v < best:
                    best = v
        if best > worst:
            worst = best
    return worst


def _converges(rel: CellRelation, mask: int, tolerance: Fraction) -> bool:
    history, pre = _history(rel, mask)
    return all(_set_distance_to_full(rel, m) <= tolerance for m in history[pre:])


def brute_attractor(rel: CellRelation, tolerance: Fraction = Fraction(0)) -> Verdict:
    """Attraction checked over every non-empty subset of the space."""
    _guard(rel)
    full = rel.space.full_mask
    for mask in range(1, full + 1):
        if not _converges(rel, mask, tolerance):
            return Verdict.REFUTED
    return Verdict.PROVED


def brute_physical(rel: CellRelation, tolerance: Fraction = Fraction(0)) -> Verdict:
    """Physical attraction over the singleton basis opens."""
    _guard(rel)
    for c in range(rel.space.cell_count):
        if not _converges(rel, 1 << c, tolerance):
            return Verdict.REFUTED
    return Verdict.PROVED


def brute_exactness(rel: CellRelation) -> Verdict:
    """Exactness over the singleton basis opens (escape at some step >= 1)."""
    _guard(rel)
    full = rel.space.full_mask
    for c in range(rel.space.cell_count):
        history, _ = _history(rel, 1 << c)
        if not any(m == full for m in history[1:]):
            return Verdict.REFUTED
    return Verdict.PROVED


def brute_mixing(rel: CellRelation) -> Verdict:
    """Mixing over ordered pairs of singleton basis opens."""
    _guard(rel)
    m = rel.space.cell_count
    for w in range(m):
        history, pre = _history(rel, 1 << w)
        for v in range(m):
            if any((state >> v) & 1 == 0 for state in history[pre:]):
                return Verdict.REFUTED
    return Verdict.PROVED


def _brute_uniform_bound(rel: CellRelation, tolerance: Fraction) -> Optional[int]:
    space = rel.space
    bound = 0
    for c in range(space.cell_count):
        history, pre = _history(rel, 1 << c)
        dists = [_set_distance_to_full(rel, m) for m in history]
        if any(d >= tolerance for d in dists[pre:]):
            return None
        idx = len(dists)
        while idx > 0 and dists[idx - 1] < tolerance:
            idx -= 1
        bound = max(bound, idx)
    return bound


def brute_equicontinuous_everywhere(rel: CellRelation, epsilon: Fraction) -> bool:
    space = rel.space
    m = space.cell_count
    depth = 2**m + 4  # past any possible pre-period
    for i in range(m):
        for j in range(m):
            if i == j or space.metric(i, j) > space.cell_size:
                continue
            a, b = 1 << i, 1 << j
            for _ in range(depth):
                if a == 0 or b == 0:
                    return False
                if _brute_hausdorff(rel, a, b) >= epsilon:
                    return False
                a, b = _image(rel, a), _image(rel, b)
    return True


def _brute_hausdorff(rel: CellRelation, a: int, b: int) -> Fraction:
    space = rel.space
    worst = Fraction(0)
    for mask, other in ((a, b), (b, a)):
        for c in range(space.cell_count):
            if not (mask >> c) & 1:
                continue
            best = None
            for d in range(space.cell_count):
                if (other >> d) & 1:
                    v = space.metric(c, d)
                    if best is None or v < best:
                        best = v
            if best > worst:
                worst = best
    return worst


def _brute_persistence_witness(rel: CellRelation, horizon: int) -> bool:
    """Is there a recurring hit pattern against some proper candidate set?

    Families are the constant singleton families; U is the one-cell ball
    around the candidate, V any disjoint singleton.
    """
    space = rel.space
    m = space.cell_count
    ball_units = 1
    for b in range(m):
        history, pre = _history(rel, 1 << b)
        cycle = history[pre:]
        for k in range(m):
            u = 0
            for c in range(m):
                if space.dist_units(c, k) <= ball_units:
                    u |= 1 << c
            if u == space.full_mask:
                continue
            for v in range(m):
                if (u >> v) & 1:
                    continue
                vm = 1 << v
                hits = [
                    i
                    for i, state in enumerate(history[: horizon + 1])
                    if state & u and not state & vm
                ]
                recurring = any(state & u and not state & vm for state in cycle)
                if hits and recurring:
                    return True
    return False


@dataclass
class ConsistencyRecord:
    attractor: Verdict
    physical: Verdict
    mixing: Verdict
    exact_inverse: Verdict
    violations: list[str]


def brute_property_lattice(rel: CellRelation, tolerance: Fraction = Fraction(0)) -> ConsistencyRecord:
    """Exhaustively evaluate the property lattice and report violations.

    Checks, at resolution: mixing iff physical; attraction implies physical,
    implies no recurring persistence witness, implies a uniform attraction
    step; and attraction of a relation iff exactness of its inverse.  The
    neighbor-separation (equicontinuity) implication is checked separately
    on concrete systems: a pre-period can separate neighbor cells even when
    everything converges, so it is not a lattice fact at resolution.
    """
    _guard(rel)
    att = brute_attractor(rel, tolerance)
    phys = brute_physical(rel, tolerance)
    mix = brute_mixing(rel)
    exact_inv = brute_exactness(inverse(rel))
    violations: list[str] = []
    if (mix is Verdict.PROVED) != (phys is Verdict.PROVED):
        violations.append("mixing and physical attraction disagree")
    if att is Verdict.PROVED and phys is not Verdict.PROVED:
        violations.append("attractor proved but physical refuted")
    if (att is Verdict.PROVED) != (exact_inv is Verdict.PROVED):
        violations.append("attractor and exactness-of-inverse disagree")
    if att is Verdict.PROVED:
        horizon = 2 ** rel.space.cell_count + 4
        if _brute_persistence_witness(rel, horizon):
            violations.append("attractor proved but persistence witness found")
        if tolerance == 0 and _brute_uniform_bound(rel, rel.space.cell_size) is None:
            violations.append("attractor proved but no uniform bound")
    return ConsistencyRecord(att, phys, mix, exact_inv, violations)
