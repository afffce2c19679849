"""Named property checks over a system, producing replayable records.

Each runner returns a JSON-ready record carrying the verdict, the exact
parameters it ran with, and enough witness data to replay the claim against
the engine.  The record set is what reports and the verify command consume.
"""

from __future__ import annotations

import time
from typing import Callable, Optional

from .attractor import (
    attractor_check,
    default_family_catalogue,
    equicontinuity_report,
    physical_attractor_check,
    proper_attractor_witness_search,
    uniform_attraction_bound,
)
from .cells import CellSet
from .errors import HorizonError, HutchlabError
from .gallery import AnalysisParams
from .ifs import (
    IfsSystem,
    hutchinson,
    minimality_check,
    repelling_cell_certificate,
    totally_minimal_check,
)
from .inverse_limit import backward_dense_orbit
from .maps import MORSE_SMALE, rasterize_map
from .relation import CellRelation, inverse
from .sysspec import encode_fraction
from .topology import (
    build_chain_graph,
    chain_mixing_check,
    chain_transitive_check,
    exactness_check,
    generate_pseudo_orbit,
    mixing_check,
    shadowing_search,
)
from .verdicts import Verdict, from_bool


def _cells(cs: CellSet) -> list[int]:
    return list(cs.members())


def _record(system: IfsSystem, params: AnalysisParams, prop: str, verdict, witness: dict) -> dict:
    return {
        "property": prop,
        "verdict": str(verdict),
        "resolution": system.space.resolution,
        "cell_count": system.space.cell_count,
        "horizon": params.horizon,
        "parameters": {
            "basis_radius": encode_fraction(params.basis_radius),
            "tolerance": encode_fraction(params.tolerance),
            "delta": encode_fraction(params.delta),
            "rng_seed": params.rng_seed,
        },
        "witness": witness,
    }


def _run_attractor(system: IfsSystem, params: AnalysisParams, rel: Optional[CellRelation] = None) -> dict:
    if rel is None:
        rel = hutchinson(system)
    result = attractor_check(
        rel, horizon=params.horizon, tolerance=params.tolerance, record_traces=False
    )
    witness: dict = {"seeds": "all-singletons"}
    if result.witness_index is not None:
        trace = result.traces[-1]
        witness["failing_seed"] = _cells(trace.seed)
        limit = trace.limit_distance()
        if limit is not None:
            witness["limit_distance"] = encode_fraction(limit)
    else:
        witness["max_converged_at"] = max(
            (t.converged_at for t in result.traces if t.converged_at is not None),
            default=None,
        )
    return _record(system, params, "attractor", result.verdict, witness)


def _run_inverse_attractor(system: IfsSystem, params: AnalysisParams) -> dict:
    # the relation inverse of the Hutchinson operator; for invertible map
    # families this coincides with the Hutchinson operator of the inverses
    rec = _run_attractor(system, params, rel=inverse(hutchinson(system)))
    rec["property"] = "inverse-attractor"
    return rec


def _run_physical(system: IfsSystem, params: AnalysisParams) -> dict:
    rel = hutchinson(system)
    result = physical_attractor_check(
        rel, params.basis_radius, params.horizon, params.tolerance
    )
    witness: dict = {}
    if result.refuted_open is not None:
        witness["failing_open"] = _cells(result.refuted_open)
    else:
        witness["opens_checked"] = len(result.records)
    return _record(system, params, "physical", result.verdict, witness)


def _run_proper_witness(system: IfsSystem, params: AnalysisParams) -> dict:
    rel = hutchinson(system)
    space = system.space
    sample = range(0, space.cell_count, max(1, space.cell_count // 16))
    families = default_family_catalogue(rel, params.horizon, sample)
    candidates = [CellSet([c]) for c in sample]
    found = proper_attractor_witness_search(
        rel,
        families,
        candidates,
        params.basis_radius + space.cell_size,
        min(params.horizon, 4 * space.cell_count),
        min_hits=3,
    )
    verdict = Verdict.REFUTED if found is not None else Verdict.PROVED
    witness: dict = {"searched_families": len(families)}
    if found is not None:
        witness.update(
            {
                "family_index": found.family_index,
                "candidate": _cells(found.candidate),
                "u": _cells(found.u),
                "v": _cells(found.v),
                "hits": found.hits[:16],
            }
        )
    rec = _record(system, params, "proper-witness", verdict, witness)
    return rec


def _run_exactness(system: IfsSystem, params: AnalysisParams) -> dict:
    rel = hutchinson(system)
    result = exactness_check(rel, params.basis_radius, params.horizon)
    witness: dict = {}
    if result.escape_times is not None:
        witness["escape_time_max"] = max(result.escape_times)
        witness["escape_time_min"] = min(result.escape_times)
        witness["escape_times"] = result.escape_times
    if result.refutation is not None:
        ref = result.refutation
        witness["failing_open"] = _cells(ref.open_set)
        witness["preperiod_length"] = len(ref.preperiod)
        witness["cycle"] = [_cells(s) for s in ref.cycle]
    return _record(system, params, "exactness", result.verdict, witness)


def _run_mixing(system: IfsSystem, params: AnalysisParams) -> dict:
    rel = hutchinson(system)
    result = mixing_check(rel, params.basis_radius, params.horizon)
    witness: dict = {}
    if result.j_max is not None:
        witness["j_max"] = result.j_max
    if result.refutation is not None:
        witness["failing_w"] = _cells(result.refutation.open_w)
        witness["failing_v"] = _cells(result.refutation.open_v)
        witness["missing_cycle_set"] = _cells(result.refutation.missing_cycle_set)
    return _record(system, params, "mixing", result.verdict, witness)


def _chain_graph(system: IfsSystem, params: AnalysisParams):
    return build_chain_graph(system, params.delta)


def _run_chain_transitive(system: IfsSystem, params: AnalysisParams) -> dict:
    graph = _chain_graph(system, params)
    verdict = from_bool(chain_transitive_check(graph))
    witness = {"scc_count": len(graph.sccs), "period": graph.period}
    return _record(system, params, "chain-transitive", verdict, witness)


def _run_chain_mixing(system: IfsSystem, params: AnalysisParams) -> dict:
    graph = _chain_graph(system, params)
    result = chain_mixing_check(graph)
    witness = {
        "scc_count": len(graph.sccs),
        "period": graph.period,
        "all_lengths_bound": result.n,
        "verified_lengths": result.verified_lengths,
    }
    return _record(system, params, "chain-mixing", from_bool(result.mixing), witness)


def _run_chain(system: IfsSystem, params: AnalysisParams) -> dict:
    graph = _chain_graph(system, params)
    transitive = chain_transitive_check(graph)
    result = chain_mixing_check(graph)
    witness = {
        "scc_count": len(graph.sccs),
        "period": graph.period,
        "transitive": str(from_bool(transitive)),
        "chain_mixing": str(from_bool(result.mixing)),
        "all_lengths_bound": result.n,
        "verified_lengths": result.verified_lengths,
    }
    return _record(system, params, "chain", from_bool(transitive and result.mixing), witness)


def _chain_seeds(system: IfsSystem, count: int) -> list[int]:
    m = system.space.cell_count
    step = max(1, m // max(count, 1))
    return [(37 * i * step) % m for i in range(count)]


def _run_shadowing(system: IfsSystem, params: AnalysisParams) -> dict:
    epsilon = params.epsilon if params.epsilon is not None else 2 * params.delta
    found: list[dict] = []
    verdict = Verdict.PROVED
    for i, seed in enumerate(_chain_seeds(system, params.chain_count)):
        chain = generate_pseudo_orbit(
            system, params.delta, params.chain_length, seed, params.rng_seed + i
        )
        cell = shadowing_search(system, chain, epsilon)
        found.append({"seed": seed, "rng_seed": params.rng_seed + i, "shadow": cell})
        if cell is None:
            verdict = Verdict.REFUTED
    witness = {
        "epsilon": encode_fraction(epsilon),
        "chain_length": params.chain_length,
        "chains": found,
    }
    return _record(system, params, "shadowing", verdict, witness)


def _run_equicontinuity(system: IfsSystem, params: AnalysisParams) -> dict:
    rel = hutchinson(system)
    space = system.space
    depth = max(1, min(params.horizon, 8))
    epsilon = params.basis_radius * 2
    report = equicontinuity_report(rel, depth, epsilon)
    all_flagged = report.equicontinuous_cells == space.full
    witness = {
        "depth": depth,
        "epsilon": encode_fraction(epsilon),
        "equicontinuous_count": len(report.equicontinuous_cells),
        "sensitivity_lower_bound": encode_fraction(report.sensitivity_lower_bound),
    }
    return _record(system, params, "equicontinuity", from_bool(all_flagged), witness)


def _run_backward_orbit(system: IfsSystem, params: AnalysisParams) -> dict:
    rel = hutchinson(system)
    try:
        orbit, report = backward_dense_orbit(
            rel,
            0,
            params.basis_radius,
            per_target_horizon=max(16, params.horizon // system.space.cell_count),
            exactness_horizon=params.horizon,
        )
    except HorizonError:
        return _record(system, params, "backward-orbit", Verdict.UNRESOLVED, {})
    ok = orbit.verify(rel) and report.density_radius <= params.basis_radius
    witness = {
        "depth": orbit.depth,
        "density_radius": encode_fraction(report.density_radius),
        "targets_reached": report.targets_reached,
        "start": orbit.cells[0],
    }
    return _record(system, params, "backward-orbit", from_bool(ok), witness)


def _run_minimality(system, params, direction, totally):
    if totally:
        verdict = totally_minimal_check(
            system, direction, params.horizon, params.minimality_bound
        )
        witness = {"bound": params.minimality_bound, "direction": direction}
        name = f"totally-minimal-{direction}"
    else:
        verdict = minimality_check(system, direction, params.horizon)
        witness = {"direction": direction}
        name = f"minimality-{direction}" if direction == "forward" else "backward-minimal"
    return _record(system, params, name, verdict, witness)


def _run_repelling(system: IfsSystem, params: AnalysisParams) -> dict:
    witness: dict = {}
    cert = None
    for descriptor in system.maps:
        if descriptor.name == MORSE_SMALE:
            rel = rasterize_map(system.space, descriptor)
            cert = repelling_cell_certificate(rel, 0)
            witness["map"] = str(descriptor)
            break
    if cert is not None:
        witness["ball"] = _cells(cert)
    verdict = from_bool(cert is not None)
    return _record(system, params, "repelling-certificate", verdict, witness)


def _run_uniform_bound(system: IfsSystem, params: AnalysisParams) -> dict:
    rel = hutchinson(system)
    tolerance = params.tolerance if params.tolerance > 0 else system.space.cell_size
    bound = uniform_attraction_bound(rel, params.horizon, tolerance)
    witness = {"n_dagger": bound, "strict_tolerance": encode_fraction(tolerance)}
    return _record(system, params, "uniform-bound", from_bool(bound is not None), witness)


CHECKS: dict[str, Callable[[IfsSystem, AnalysisParams], dict]] = {
    "attractor": _run_attractor,
    "inverse-attractor": _run_inverse_attractor,
    "physical": _run_physical,
    "proper-witness": _run_proper_witness,
    "exactness": _run_exactness,
    "mixing": _run_mixing,
    "chain": _run_chain,
    "chain-transitive": _run_chain_transitive,
    "chain-mixing": _run_chain_mixing,
    "shadowing": _run_shadowing,
    "equicontinuity": _run_equicontinuity,
    "backward-orbit": _run_backward_orbit,
    "minimality-forward": lambda s, p: _run_minimality(s, p, "forward", False),
    "backward-minimal": lambda s, p: _run_minimality(s, p, "backward", False),
    "totally-minimal-forward": lambda s, p: _run_minimality(s, p, "forward", True),
    "totally-minimal-backward": lambda s, p: _run_minimality(s, p, "backward", True),
    "repelling-certificate": _run_repelling,
    "uniform-bound": _run_uniform_bound,
}


def run_check(name: str, system: IfsSystem, params: AnalysisParams) -> dict:
    if name not in CHECKS:
        raise HutchlabError(f"unknown check {name!r}; known: {sorted(CHECKS)}")
    start = time.monotonic()
    record = CHECKS[name](system, params)
    record["wall_time"] = time.monotonic() - start
    return record


def run_checks(names, system: IfsSystem, params: AnalysisParams) -> list[dict]:
    return [run_check(name, system, params) for name in names]
