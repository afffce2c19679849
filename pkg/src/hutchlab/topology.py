"""Exactness and mixing certification plus delta-chain machinery.

Exactness and mixing are decidable at resolution because iterating a cell
set is eventually periodic: a basis open either reaches the full space or
enters a cycle of proper sets, and that cycle is the refutation certificate.
Chain analysis fattens the Hutchinson relation on the target side by delta
and works on the resulting finite graph.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from .cells import CellSet, iter_bits
from .errors import DeadEndError, RelationError
from .ifs import IfsSystem
from .relation import CellRelation, Trajectory, mask_trajectory, union_relations
from .space import DiscreteSpace, _ball_mask, basis
from .verdicts import Verdict


@dataclass
class ExactnessRefutation:
    open_set: CellSet
    preperiod: list[CellSet]
    cycle: list[CellSet]


@dataclass
class ExactnessResult:
    verdict: Verdict
    escape_times: Optional[list[int]]  # per basis open, when proved
    refutation: Optional[ExactnessRefutation]
    basis_radius: Fraction
    horizon: int

    @property
    def max_escape_time(self) -> Optional[int]:
        return max(self.escape_times) if self.escape_times else None


def _escape_time(traj: Trajectory, full: int) -> Optional[int]:
    for j in range(1, len(traj.masks)):
        if traj.masks[j] == full:
            return j
    return None


@dataclass
class OpenEscape:
    open_set: CellSet
    escape_time: Optional[int]
    refutation: Optional[ExactnessRefutation]
    resolved: bool


def open_escape(rel: CellRelation, open_set: CellSet, horizon: int) -> OpenEscape:
    """Escape time or refutation certificate of a single open set."""
    traj = mask_trajectory(rel.image_mask, open_set.mask, horizon)
    j = _escape_time(traj, rel.space.full_mask)
    if j is not None:
        return OpenEscape(open_set, j, None, True)
    if not traj.resolved:
        return OpenEscape(open_set, None, None, False)
    refutation = ExactnessRefutation(
        open_set,
        [CellSet.from_mask(m) for m in traj.masks[: traj.preperiod]],
        [CellSet.from_mask(m) for m in traj.cycle_masks()],
    )
    return OpenEscape(open_set, None, refutation, True)


def exactness_check(
    rel: CellRelation, basis_radius: Fraction, horizon: int
) -> ExactnessResult:
    """Does every basis open cover the space after finitely many steps?"""
    if horizon < 1:
        raise RelationError("exactness horizon must be positive")
    space = rel.space
    times: list[int] = []
    unresolved = False
    for w in basis(space, basis_radius):
        esc = open_escape(rel, w, horizon)
        if esc.escape_time is not None:
            times.append(esc.escape_time)
            continue
        if esc.refutation is not None:
            return ExactnessResult(
                Verdict.REFUTED, None, esc.refutation, Fraction(basis_radius), horizon
            )
        unresolved = True
    if unresolved:
        return ExactnessResult(Verdict.UNRESOLVED, None, None, Fraction(basis_radius), horizon)
    return ExactnessResult(Verdict.PROVED, times, None, Fraction(basis_radius), horizon)


@dataclass
class MixingRefutation:
    open_w: CellSet
    open_v: CellSet
    missing_cycle_set: CellSet


@dataclass
class MixingResult:
    verdict: Verdict
    j_max: Optional[int]  # largest settle time over checked pairs, when proved
    refutation: Optional[MixingRefutation]
    basis_radius: Fraction
    horizon: int


def mixing_check(
    rel: CellRelation, basis_radius: Fraction, horizon: int
) -> MixingResult:
    """For every ordered pair of basis opens (W, V): do the iterates of W
    eventually always meet V?  The pair settles at J = last miss + 1."""
    if horizon < 1:
        raise RelationError("mixing horizon must be positive")
    space = rel.space
    full = space.full_mask
    opens = basis(space, basis_radius)
    singleton_basis = all(len(v) == 1 for v in opens)
    j_max = 0
    unresolved = False
    for w in opens:
        traj = mask_trajectory(rel.image_mask, w.mask, horizon)
        if not traj.resolved:
            unresolved = True
            continue
        cycle = traj.cycle_masks()
        if singleton_basis and all(m == full for m in cycle):
            # every cycle set meets every non-empty V; the last proper set
            # of the pre-period is where the worst singleton V still misses
            last_miss = -1
            for i in range(len(traj.masks) - 1, -1, -1):
                if traj.masks[i] != full:
                    last_miss = i
                    break
            j_max = max(j_max, last_miss + 1)
            continue
        for v in opens:
            vm = v.mask
            for m in cycle:
                if m & vm == 0:
                    return MixingResult(
                        Verdict.REFUTED,
                        None,
                        MixingRefutation(w, v, CellSet.from_mask(m)),
                        Fraction(basis_radius),
                        horizon,
                    )
            last_miss = -1
            for i in range(len(traj.masks) - 1, -1, -1):
                if traj.masks[i] & vm == 0:
                    last_miss = i
                    break
            j_max = max(j_max, last_miss + 1)
    if unresolved:
        return MixingResult(Verdict.UNRESOLVED, None, None, Fraction(basis_radius), horizon)
    return MixingResult(Verdict.PROVED, j_max, None, Fraction(basis_radius), horizon)


# -- delta-chain machinery --------------------------------------------------


def _dilate_mask(space: DiscreteSpace, mask: int, h: int) -> int:
    if h <= 0 or mask == 0:
        return mask
    if space.kind == "circle":
        m = space.resolution
        full = space.full_mask
        out = mask
        for o in range(1, h + 1):
            out |= ((mask << o) | (mask >> (m - o))) & full
            out |= ((mask >> o) | (mask << (m - o))) & full
        return out
    out = 0
    for c in iter_bits(mask):
        out |= _ball_mask(space, c, h)
    return out


@dataclass
class ChainGraph:
    """Target-side delta-fattening of a Hutchinson relation."""

    space: DiscreteSpace
    delta: Fraction
    edges: CellRelation
    sccs: list[list[int]]
    period: Optional[int]  # gcd of cycle lengths when strongly connected

    @property
    def strongly_connected(self) -> bool:
        return len(self.sccs) == 1


def _tarjan_sccs(successors: tuple[int, ...]) -> list[list[int]]:
    """Iterative Tarjan over bitmask adjacency."""
    n = len(successors)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, iter_bits(successors[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter_bits(successors[w])))
                    advanced = True
                    break
                if on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(sorted(comp))
    return sccs


def _graph_period(successors: tuple[int, ...], component: list[int]) -> int:
    """gcd of cycle lengths inside one strongly connected component."""
    level = {component[0]: 0}
    order = [component[0]]
    g = 0
    head = 0
    comp_set = set(component)
    while head < len(order):
        u = order[head]
        head += 1
        for w in iter_bits(successors[u]):
            if w not in comp_set:
                continue
            if w not in level:
                level[w] = level[u] + 1
                order.append(w)
            else:
                g = gcd(g, level[u] + 1 - level[w])
    return abs(g) if g else 0


def build_chain_graph(system: IfsSystem, delta: Fraction) -> ChainGraph:
    """Graph with an edge i -> j when j lies strictly within delta of the
    Hutchinson image of cell i (delta-chains are exactly its paths)."""
    delta = Fraction(delta)
    if delta <= 0:
        raise RelationError("delta must be positive")
    space = system.space
    hutch = union_relations(space, system.effective_relations())
    h = max(space.strict_radius_units(delta), 0)
    rows = [_dilate_mask(space, m, h) for m in hutch.successors]
    edges = CellRelation(space, rows)
    sccs = _tarjan_sccs(edges.successors)
    period = None
    if len(sccs) == 1:
        period = _graph_period(edges.successors, sccs[0])
    return ChainGraph(space, delta, edges, sccs, period)


def chain_transitive_check(graph: ChainGraph) -> bool:
    """Delta-chains join every ordered pair iff the graph is one SCC."""
    return graph.strongly_connected


@dataclass
class ChainMixingResult:
    mixing: bool
    n: Optional[int]  # verified all-pairs all-lengths bound
    verified_lengths: int


def chain_mixing_check(
    graph: ChainGraph, n_check: int = 8, horizon: Optional[int] = None
) -> ChainMixingResult:
    """Chains of every sufficiently large length join every pair iff the
    graph is strongly connected with period 1.

    The returned N is computed, not theoretical: each cell's iterated
    successor set is driven to the full space (N is the largest hitting
    time), and lengths N+1 .. N+n_check are then verified by boolean
    powering from the all-full state.
    """
    if not graph.strongly_connected or graph.period != 1:
        return ChainMixingResult(False, None, 0)
    space = graph.space
    edges = graph.edges
    full = space.full_mask
    if edges.image_mask(full) != full:
        # cannot happen for a strongly connected graph; guards the algebra
        return ChainMixingResult(False, None, 0)
    cap = horizon if horizon is not None else max(4 * space.cell_count, 256)
    n = 0
    for cell in range(space.cell_count):
        mask = 1 << cell
        steps = 0
        while mask != full:
            mask = edges.image_mask(mask)
            steps += 1
            if steps > cap:
                return ChainMixingResult(True, None, 0)
        if steps > n:
            n = steps
    verified = 0
    mask = full
    for _ in range(n_check):
        mask = edges.image_mask(mask)
        if mask != full:
            return ChainMixingResult(True, None, verified)
        verified += 1
    return ChainMixingResult(True, n, verified)


@dataclass
class PseudoOrbit:
    """A delta-chain: cells[i+1] lies strictly within delta of the image of
    cells[i] under the map named by word[i] (1-based index)."""

    cells: list[int]
    word: list[int]
    delta: Fraction


def generate_pseudo_orbit(
    system: IfsSystem,
    delta: Fraction,
    length: int,
    seed_cell: int,
    rng_seed: int,
) -> PseudoOrbit:
    """Random walk through the delta-fattened per-map relations."""
    if length < 1:
        raise RelationError("pseudo-orbit length must be at least 1")
    delta = Fraction(delta)
    space = system.space
    rels = system.effective_relations()
    h = max(space.strict_radius_units(delta), 0)
    rng = random.Random(rng_seed)
    cells = [seed_cell]
    word: list[int] = []
    current = seed_cell
    for _ in range(length):
        k = rng.randrange(len(rels))
        admissible = _dilate_mask(space, rels[k].image_mask(1 << current), h)
        if admissible == 0:
            raise DeadEndError(f"no admissible continuation from cell {current}")
        choices = list(iter_bits(admissible))
        current = rng.choice(choices)
        cells.append(current)
        word.append(k + 1)
    return PseudoOrbit(cells, word, delta)


def validate_pseudo_orbit(system: IfsSystem, chain: PseudoOrbit) -> bool:
    """Re-check the chain condition against the exact map relations."""
    space = system.space
    rels = system.effective_relations()
    h = max(space.strict_radius_units(chain.delta), 0)
    for i, k in enumerate(chain.word):
        img = rels[k - 1].image_mask(1 << chain.cells[i])
        if space.point_to_set_units(chain.cells[i + 1], img) > h:
            return False
    return True


def shadowing_search(
    system: IfsSystem, chain: PseudoOrbit, epsilon: Fraction
) -> Optional[int]:
    """Brute-force scan for a cell whose exact image sets track the chain.

    A candidate y is accepted when at every step i the image set of y under
    the chain's word stays strictly within epsilon of cells[i] (point-to-set
    distance).  Returns the first accepting cell, or None.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise RelationError("epsilon must be positive")
    space = system.space
    rels = system.effective_relations()
    word_rels = [rels[k - 1] for k in chain.word]
    h = space.strict_radius_units(epsilon)
    if h < 0:
        return None
    for y in range(space.cell_count):
        mask = 1 << y
        ok = True
        for i, x in enumerate(chain.cells):
            if space.point_to_set_units(x, mask) > h:
                ok = False
                break
            if i < len(word_rels):
                mask = word_rels[i].image_mask(mask)
                if mask == 0:
                    ok = False
                    break
        if ok:
            return y
    return None
