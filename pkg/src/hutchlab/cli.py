"""Command line interface.

    hutchlab gallery list
    hutchlab gallery export <id> <file>
    hutchlab analyze --system <file|gallery:ID> --checks exactness,mixing ...
    hutchlab verify --report <file>

Exit codes: 0 all selected checks match expectations (or none were stated),
1 mismatch or failed replay, 2 usage or spec-file error, 3 resource cap
exceeded.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Optional

from .analysis import CHECKS, run_checks
from .attractor import attraction_trace
from .cells import CellSet
from .errors import HutchlabError, ResourceCapError, SpecFileError
from .gallery import AnalysisParams, build_gallery, gallery_entry
from .ifs import IfsSystem, hutchinson
from .report import build_report, compare_expected, load_report, save_report, verify_report
from .sysspec import entry_to_file, load_system_file, parse_fraction
from .space import build_space

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hutchlab",
        description="certify attractor, mixing and chain properties of "
        "discretized relations and IFSs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gal = sub.add_parser("gallery", help="list or export the built-in systems")
    gal_sub = gal.add_subparsers(dest="gallery_command", required=True)
    gal_sub.add_parser("list", help="print the gallery entries")
    exp = gal_sub.add_parser("export", help="write an entry as a system-spec file")
    exp.add_argument("id")
    exp.add_argument("file")

    ana = sub.add_parser("analyze", help="run checks against a system")
    ana.add_argument("--system", required=True, help="spec file path or gallery:ID")
    ana.add_argument("--checks", help="comma-separated check names")
    ana.add_argument("--resolution", type=int, help="re-discretize at this resolution")
    ana.add_argument("--horizon", type=int)
    ana.add_argument("--delta", help="chain fattening, rational like 1/256")
    ana.add_argument("--basis-radius", dest="basis_radius", help="rational")
    ana.add_argument("--tolerance", help="rational")
    ana.add_argument("--epsilon", help="shadowing radius, rational")
    ana.add_argument("--rng-seed", dest="rng_seed", type=int)
    ana.add_argument("--out", help="write the report JSON here")
    ana.add_argument("--trace-csv", dest="trace_csv", help="write an attraction trace "
                     "(and a figure next to it)")
    ana.add_argument("--trace-seed", dest="trace_seed", type=int, default=0)

    ver = sub.add_parser("verify", help="replay a report's checks")
    ver.add_argument("--report", required=True)
    return parser


def _resolve_system(source: str):
    """Returns (system, expected, params, system_id)."""
    if source.startswith("gallery:"):
        entry = gallery_entry(source[len("gallery:") :])
        return entry.system, dict(entry.expected), entry.params, entry.id
    system, expected, params = load_system_file(source)
    return system, expected, params, source


def _rescale_params(params: AnalysisParams, old_space, new_space) -> AnalysisParams:
    """Carry cell-relative analysis scales over to a new resolution."""
    ratio = Fraction(new_space.cell_count, old_space.cell_count)
    scale = new_space.cell_size / old_space.cell_size
    return AnalysisParams(
        horizon=max(64, int(params.horizon * ratio)),
        basis_radius=params.basis_radius * scale,
        tolerance=params.tolerance * scale,
        delta=params.delta * scale,
        rng_seed=params.rng_seed,
        epsilon=params.epsilon * scale if params.epsilon is not None else None,
        chain_count=params.chain_count,
        chain_length=params.chain_length,
        minimality_bound=params.minimality_bound,
    )


def _apply_overrides(params: AnalysisParams, args) -> AnalysisParams:
    def frac(text: Optional[str], name: str, fallback):
        return parse_fraction(text, name) if text is not None else fallback

    return AnalysisParams(
        horizon=args.horizon if args.horizon is not None else params.horizon,
        basis_radius=frac(args.basis_radius, "--basis-radius", params.basis_radius),
        tolerance=frac(args.tolerance, "--tolerance", params.tolerance),
        delta=frac(args.delta, "--delta", params.delta),
        rng_seed=args.rng_seed if args.rng_seed is not None else params.rng_seed,
        epsilon=frac(args.epsilon, "--epsilon", params.epsilon),
        chain_count=params.chain_count,
        chain_length=params.chain_length,
        minimality_bound=params.minimality_bound,
    )


def _write_trace(system: IfsSystem, params: AnalysisParams, csv_path: str, seed_cell: int) -> None:
    rel = hutchinson(system)
    trace = attraction_trace(
        rel, CellSet([seed_cell]), params.horizon, params.tolerance
    )
    with open(csv_path, "w", encoding="utf-8") as fh:
        for i, dist in enumerate(trace.distances):
            fh.write(f"{i},{float(dist):.12g}\n")
    png_path = csv_path.rsplit(".", 1)[0] + ".png" if "." in csv_path else csv_path + ".png"
    from .plots import render_trace_figure

    render_trace_figure(
        range(len(trace.distances)),
        trace.distances,
        png_path,
        title=f"attraction trace from cell {seed_cell}",
    )


def _cmd_gallery(args) -> int:
    if args.gallery_command == "list":
        for entry in build_gallery():
            space = entry.system.space
            maps = ", ".join(str(m) for m in entry.system.maps)
            print(f"{entry.id}: {space.kind} resolution {space.resolution}, maps [{maps}]")
            print(f"    {entry.notes}")
            expect = ", ".join(f"{k}={v}" for k, v in sorted(entry.expected.items()))
            print(f"    expected: {expect}")
        return EXIT_OK
    entry = gallery_entry(args.id)
    entry_to_file(entry, args.file)
    print(f"wrote {args.file}")
    return EXIT_OK


def _cmd_analyze(args) -> int:
    system, expected, params, system_id = _resolve_system(args.system)
    if args.resolution is not None:
        old_space = system.space
        new_space = build_space(old_space.kind, args.resolution)
        system = IfsSystem(new_space, system.maps, system.options)
        params = _rescale_params(params, old_space, new_space)
    params = _apply_overrides(params, args)
    if args.checks:
        names = [c.strip() for c in args.checks.split(",") if c.strip()]
    else:
        names = [k for k in expected if k in CHECKS] or ["exactness"]
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise SpecFileError(f"unknown checks: {', '.join(unknown)}")
    records = run_checks(names, system, params)
    for record in records:
        print(f"{record['property']}: {record['verdict']}  [{record['wall_time']:.2f}s]")
    if args.out:
        save_report(args.out, build_report(system, params, records, system_id, expected))
        print(f"report written to {args.out}")
    if args.trace_csv:
        _write_trace(system, params, args.trace_csv, args.trace_seed)
        print(f"trace written to {args.trace_csv}")
    problems = compare_expected(records, expected)
    for problem in problems:
        print(f"MISMATCH {problem}", file=sys.stderr)
    return EXIT_MISMATCH if problems else EXIT_OK


def _cmd_verify(args) -> int:
    report = load_report(args.report)
    problems = verify_report(report)
    for problem in problems:
        print(f"REPLAY-MISMATCH {problem}", file=sys.stderr)
    if not problems:
        print("report verified: all checks replay identically")
    return EXIT_MISMATCH if problems else EXIT_OK


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        if args.command == "gallery":
            return _cmd_gallery(args)
        if args.command == "analyze":
            return _cmd_analyze(args)
        return _cmd_verify(args)
    except ResourceCapError as exc:
        print(f"resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (SpecFileError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except HutchlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
