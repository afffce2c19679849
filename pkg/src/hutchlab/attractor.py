"""Attraction analysis: traces, attractor verdicts, the orbit metric d_phi,
equicontinuity reports, uniform attraction bounds and the persistence-witness
search that refutes properness.

Everything quantifies over the discretized system: iterating a cell set is
eventually periodic, so "converges" means "the detected limit cycle stays
within tolerance of the full space".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .cells import CellSet
from .errors import EmptySetError, RelationError
from .relation import CellRelation, Trajectory, mask_trajectory
from .space import ball, basis, hausdorff_units
from .verdicts import Verdict


def _distance_units(rel: CellRelation, mask: int) -> int:
    """Unit distance from an iterate to the full space.

    The empty set never converges; it is reported one unit beyond the
    diameter so comparisons stay monotone.
    """
    if mask == 0:
        return rel.space.diameter_units + 1
    return rel.space.covering_radius_units(mask)


def _leq_units(space, tolerance: Fraction) -> int:
    """Largest unit count with distance <= tolerance."""
    return math.floor(Fraction(tolerance) * space.unit_den)


@dataclass
class AttractionTrace:
    """Distance-to-full-space record of one iterated seed."""

    seed: CellSet
    distances: list[Fraction]
    converged_at: Optional[int]
    preperiod: Optional[int]
    cycle: Optional[int]

    @property
    def resolved(self) -> bool:
        return self.preperiod is not None

    def limit_distance(self) -> Optional[Fraction]:
        if not self.resolved:
            return None
        return max(self.distances[self.preperiod : self.preperiod + self.cycle])


def _trace_from_trajectory(
    rel: CellRelation, seed: CellSet, traj: Trajectory, tol_units: int
) -> AttractionTrace:
    units = [_distance_units(rel, m) for m in traj.masks]
    den = rel.space.unit_den
    distances = [Fraction(u, den) for u in units]
    converged_at = None
    if traj.resolved:
        cycle_units = units[traj.preperiod : traj.preperiod + traj.cycle]
        if max(cycle_units) <= tol_units:
            idx = len(units)
            while idx > 0 and units[idx - 1] <= tol_units:
                idx -= 1
            converged_at = idx
    return AttractionTrace(seed, distances, converged_at, traj.preperiod, traj.cycle)


def attraction_trace(
    rel: CellRelation, seed: CellSet, horizon: int, tolerance: Fraction = Fraction(0)
) -> AttractionTrace:
    """Iterate one seed with cycle detection and record every distance."""
    if not seed:
        raise EmptySetError("attraction trace requires a non-empty seed")
    traj = mask_trajectory(rel.image_mask, seed.mask, horizon)
    return _trace_from_trajectory(rel, seed, traj, _leq_units(rel.space, tolerance))


def _seed_status(rel: CellRelation, mask: int, horizon: int, tol_units: int):
    """Lean converged/refuted/unresolved decision for one seed.

    Distances are computed on the limit cycle only, which decides the
    verdict; full traces are built separately where they are reported.
    """
    traj = mask_trajectory(rel.image_mask, mask, horizon)
    if not traj.resolved:
        return None, traj
    worst = max(_distance_units(rel, m) for m in traj.cycle_masks())
    return worst <= tol_units, traj


@dataclass
class AttractorResult:
    verdict: Verdict
    traces: list[AttractionTrace]
    witness_index: Optional[int]  # refuting (or unresolved) seed position
    tolerance: Fraction
    horizon: int


def default_seeds(rel: CellRelation) -> list[CellSet]:
    """All singletons: images distribute over unions, so these suffice."""
    return [CellSet.from_mask(1 << c) for c in range(rel.space.cell_count)]


def attractor_check(
    rel: CellRelation,
    seeds: Optional[Sequence[CellSet]] = None,
    horizon: int = 0,
    tolerance: Fraction = Fraction(0),
    record_traces: bool = True,
) -> AttractorResult:
    """Do the iterates of every seed converge to the full space?

    The verdict quantifies over the supplied seeds only; the default seed
    list is every singleton, which at cell resolution covers all non-empty
    compact sets.
    """
    if horizon < 1:
        raise RelationError("attractor horizon must be positive")
    tolerance = Fraction(tolerance)
    if seeds is None:
        seeds = default_seeds(rel)
    seeds = list(seeds)
    if not seeds:
        raise EmptySetError("attractor check requires at least one seed")
    for s in seeds:
        if not s:
            raise EmptySetError("attractor seeds must be non-empty")
    tol_units = _leq_units(rel.space, tolerance)
    traces: list[AttractionTrace] = []
    verdict = Verdict.PROVED
    witness = None
    for idx, seed in enumerate(seeds):
        ok, traj = _seed_status(rel, seed.mask, horizon, tol_units)
        if record_traces or ok is not True:
            traces.append(_trace_from_trajectory(rel, seed, traj, tol_units))
        if ok is False:
            verdict = Verdict.REFUTED
            witness = idx
            break
        if ok is None:
            verdict = Verdict.UNRESOLVED
            witness = idx
            break
    return AttractorResult(verdict, traces, witness, tolerance, horizon)


@dataclass
class PhysicalOpenRecord:
    open_set: CellSet
    witness: Optional[CellSet]
    converged_at: Optional[int]


@dataclass
class PhysicalResult:
    verdict: Verdict
    refuted_open: Optional[CellSet]
    records: list[PhysicalOpenRecord]
    basis_radius: Fraction
    tolerance: Fraction
    horizon: int


def physical_attractor_check(
    rel: CellRelation,
    basis_radius: Fraction,
    horizon: int,
    tolerance: Fraction = Fraction(0),
) -> PhysicalResult:
    """Does every basis open contain a subset whose iterates converge?

    Since images are monotone in the seed, an open fails exactly when the
    open itself fails, so refutation only tests the open; the witness search
    for proved opens prefers singletons, then the open itself.
    """
    space = rel.space
    tolerance = Fraction(tolerance)
    tol_units = _leq_units(space, tolerance)
    records: list[PhysicalOpenRecord] = []
    unresolved = False
    for u in basis(space, basis_radius):
        ok_u, traj_u = _seed_status(rel, u.mask, horizon, tol_units)
        if ok_u is False:
            return PhysicalResult(
                Verdict.REFUTED, u, records, Fraction(basis_radius), tolerance, horizon
            )
        witness = None
        conv = None
        for cell in u:
            mask = 1 << cell
            if mask == u.mask:
                break  # the open is itself a singleton; covered below
            ok, traj = _seed_status(rel, mask, horizon, tol_units)
            if ok:
                witness = CellSet.from_mask(mask)
                conv = _trace_from_trajectory(
                    rel, witness, traj, tol_units
                ).converged_at
                break
        if witness is None and ok_u:
            witness = u
            conv = _trace_from_trajectory(rel, u, traj_u, tol_units).converged_at
        if witness is None:
            unresolved = True
        records.append(PhysicalOpenRecord(u, witness, conv))
    verdict = Verdict.UNRESOLVED if unresolved else Verdict.PROVED
    return PhysicalResult(verdict, None, records, Fraction(basis_radius), tolerance, horizon)


@dataclass
class ProperWitness:
    """Evidence against properness: iterates of a family keep meeting a
    neighborhood of a proper compact set while missing an open set."""

    family_index: int
    candidate: CellSet
    u: CellSet
    v: CellSet
    hits: list[int]
    recurring: bool


def proper_attractor_witness_search(
    rel: CellRelation,
    families: Sequence[Sequence[CellSet]],
    candidates: Sequence[CellSet],
    neighborhood_radius: Fraction,
    horizon: int,
    min_hits: int = 1,
) -> Optional[ProperWitness]:
    """Finite-horizon search for a persistence witness.

    A hit at step i means some family member's i-th iterate meets U (the
    fattened candidate) while missing V.  A witness needs at least
    ``min_hits`` hits with at least one hit landing inside a detected cycle,
    so the hit pattern genuinely recurs forever at resolution.
    """
    if min_hits < 1:
        raise RelationError("min_hits must be at least 1")
    space = rel.space
    full = space.full_mask
    opens = basis(space, neighborhood_radius)
    for k in candidates:
        if not k:
            raise EmptySetError("candidate compact sets must be non-empty")
        if k.mask == full:
            raise RelationError("candidate K must be a proper subset of the space")
    for fam_idx, family in enumerate(families):
        trajs = [mask_trajectory(rel.image_mask, b.mask, horizon) for b in family]
        for k in candidates:
            u_mask = 0
            for cell in k:
                u_mask |= ball(space, cell, neighborhood_radius).mask
            for v in opens:
                if v.mask & u_mask:
                    continue
                hits: list[int] = []
                recurring = False
                for i in range(horizon + 1):
                    hit = False
                    for traj in trajs:
                        if i >= len(traj.masks) and not traj.resolved:
                            continue
                        m = traj.mask_at(i)
                        if m & u_mask and not m & v.mask:
                            hit = True
                            if (
                                traj.resolved
                                and i >= traj.preperiod
                                and i < traj.preperiod + traj.cycle
                            ):
                                recurring = True
                    if hit:
                        hits.append(i)
                if len(hits) >= min_hits and recurring:
                    return ProperWitness(
                        fam_idx, k, CellSet.from_mask(u_mask), v, hits[:32], recurring
                    )
    return None


def default_family_catalogue(
    rel: CellRelation,
    horizon: int,
    sample_cells: Optional[Iterable[int]] = None,
) -> list[list[CellSet]]:
    """Families the persistence search runs by default.

    Constant singleton families plus, for refuted attractor runs, the
    singleton families built from seeds whose iterates stay far from the
    full space.
    """
    space = rel.space
    if sample_cells is None:
        sample_cells = range(min(space.cell_count, 16))
    families = []
    for c in sample_cells:
        families.append([CellSet.from_mask(1 << c)] * 4)
    # orbit-style family: one singleton per sampled cell
    families.append([CellSet.from_mask(1 << c) for c in sample_cells])
    return families


def d_phi(rel: CellRelation, i: int, j: int, n_max: int) -> Fraction:
    """Truncated orbit metric: max Hausdorff distance of the first n_max
    iterates of the two cells (monotone non-decreasing in n_max)."""
    if n_max < 0:
        raise RelationError("d_phi requires N >= 0")
    space = rel.space
    a = 1 << i
    b = 1 << j
    worst = 0
    for _ in range(n_max + 1):
        if a == 0 or b == 0:
            worst = max(worst, space.diameter_units + 1)
            break
        d = hausdorff_units(space, a, b)
        if d > worst:
            worst = d
        a = rel.image_mask(a)
        b = rel.image_mask(b)
    return Fraction(worst, space.unit_den)


@dataclass
class EquicontinuityReport:
    equicontinuous_cells: CellSet
    sensitivity_lower_bound: Fraction
    n: int
    epsilon: Fraction


def _neighbors(space, cell: int) -> list[int]:
    return [
        j
        for j in range(space.cell_count)
        if j != cell and space.dist_units(cell, j) <= 1
    ]


def equicontinuity_report(
    rel: CellRelation, n: int, epsilon: Fraction
) -> EquicontinuityReport:
    """Flag cells whose one-cell neighbors stay epsilon-close in d_phi.

    The sensitivity lower bound is the smallest over cells of the largest
    neighbor separation, a resolution-level floor for the sensitivity
    constant.
    """
    if n < 1:
        raise RelationError("equicontinuity depth must be at least 1")
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise RelationError("epsilon must be positive")
    space = rel.space
    flagged = 0
    bound: Optional[Fraction] = None
    for cell in range(space.cell_count):
        worst = Fraction(0)
        for nb in _neighbors(space, cell):
            d = d_phi(rel, cell, nb, n)
            if d > worst:
                worst = d
        if worst < epsilon:
            flagged |= 1 << cell
        if bound is None or worst < bound:
            bound = worst
    return EquicontinuityReport(
        CellSet.from_mask(flagged), bound if bound is not None else Fraction(0), n, epsilon
    )


def uniform_attraction_bound(
    rel: CellRelation, horizon: int, tolerance: Fraction
) -> Optional[int]:
    """First step from which every cell's iterate stays strictly within
    tolerance of the full space, through detected cycles; None if no such
    step exists at this horizon."""
    if horizon < 1:
        raise RelationError("horizon must be at least 1")
    space = rel.space
    strict_units = space.strict_radius_units(Fraction(tolerance))
    bound = 0
    for cell in range(space.cell_count):
        traj = mask_trajectory(rel.image_mask, 1 << cell, horizon)
        if not traj.resolved:
            return None
        units = [_distance_units(rel, m) for m in traj.masks]
        if max(units[traj.preperiod : traj.preperiod + traj.cycle]) > strict_units:
            return None
        idx = len(units)
        while idx > 0 and units[idx - 1] <= strict_units:
            idx -= 1
        if idx > bound:
            bound = idx
    return bound
