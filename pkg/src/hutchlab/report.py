"""Analysis reports: assembly, serialization, and witness replay.

A report embeds the full system spec and every parameter, so any verdict in
it can be recomputed from the file alone.  Two reports over the same inputs
are byte-identical apart from the wall_time fields.
"""

from __future__ import annotations

import copy
import json
from typing import Optional

from .errors import SpecFileError
from .gallery import AnalysisParams
from .analysis import run_check
from .ifs import IfsSystem
from .sysspec import params_from_dict, system_from_dict, system_to_dict

REPORT_FORMAT = "hutchlab-report-v1"


def build_report(
    system: IfsSystem,
    params: AnalysisParams,
    records: list[dict],
    system_id: str = "",
    expected: Optional[dict] = None,
) -> dict:
    return {
        "format": REPORT_FORMAT,
        "system_id": system_id,
        "system": system_to_dict(system, expected, params),
        "resolution": system.space.resolution,
        "cell_count": system.space.cell_count,
        "horizon": params.horizon,
        "checks": records,
    }


def save_report(path: str, report: dict) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_report(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            report = json.load(fh)
    except OSError as exc:
        raise SpecFileError(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecFileError(
            f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(report, dict) or report.get("format") != REPORT_FORMAT:
        raise SpecFileError(f"{path}: not a {REPORT_FORMAT} document")
    return report


def canonical(record: dict) -> dict:
    """Record with volatile fields removed, for comparisons."""
    out = copy.deepcopy(record)
    out.pop("wall_time", None)
    return out


def verify_report(report: dict) -> list[str]:
    """Replay every check in the report; returns human-readable mismatches."""
    system, expected, analysis = system_from_dict(report.get("system", {}), "report.system")
    params = params_from_dict(analysis, system.space, "report.system.analysis")
    problems: list[str] = []
    for record in report.get("checks", []):
        prop = record.get("property")
        if not isinstance(prop, str):
            problems.append("check record without a property name")
            continue
        fresh = run_check(prop, system, params)
        if canonical(fresh) != canonical(record):
            problems.append(f"{prop}: replay does not match the recorded result")
    return problems


def compare_expected(records: list[dict], expected: dict) -> list[str]:
    """Mismatches between recorded verdicts and the expectation map."""
    verdicts = {r["property"]: r["verdict"] for r in records}
    problems = []
    for prop, want in expected.items():
        got = verdicts.get(prop)
        if got is None:
            continue  # expectation for a check that was not selected
        if got != want:
            problems.append(f"{prop}: expected {want}, got {got}")
    return problems
