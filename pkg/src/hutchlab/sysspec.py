"""System-spec documents: the on-disk form of a system plus expectations.

A spec is a JSON object:

    {
      "space": {"kind": "circle", "resolution": 1024},
      "maps": [{"name": "times_m", "params": {"m": 2}},
               {"name": "rotation", "params": {"alpha": "263/840"}}],
      "options": {"adjoin_identity": false, "symmetric_closure": false,
                  "use_inverse_family": false},
      "expected": {"exactness": "proved-at-resolution"},
      "analysis": {"horizon": 4096, "basis_radius": "1/1024",
                   "tolerance": "0", "delta": "3/2048", "rng_seed": 42}
    }

Rationals are serialized as "p/q" strings so nothing is lost to floats.
``expected`` and ``analysis`` are optional.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional

from .errors import SpecFileError
from .gallery import AnalysisParams, GalleryEntry
from .ifs import IfsOptions, IfsSystem
from .maps import (
    MORSE_SMALE,
    ROTATION,
    TIMES_M,
    MapDescriptor,
)
from .space import DiscreteSpace, build_space, coherent_tolerance


def encode_fraction(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_fraction(value: Any, where: str) -> Fraction:
    if isinstance(value, bool):
        raise SpecFileError(f"{where}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise SpecFileError(f"{where}: not a rational: {value!r}") from exc
    raise SpecFileError(f"{where}: expected an integer or 'p/q' string, got {value!r}")


_PARAM_KEY = {ROTATION: "alpha", TIMES_M: "m", MORSE_SMALE: "mu"}


def descriptor_to_dict(descriptor: MapDescriptor) -> dict:
    params: dict[str, Any] = {}
    key = _PARAM_KEY.get(descriptor.name)
    if key is not None:
        value = descriptor.param
        params[key] = value if isinstance(value, int) else encode_fraction(value)
    return {"name": descriptor.name, "params": params}


def descriptor_from_dict(data: dict, where: str) -> MapDescriptor:
    if not isinstance(data, dict) or "name" not in data:
        raise SpecFileError(f"{where}: each map needs a 'name' field")
    name = data["name"]
    params = data.get("params") or {}
    if not isinstance(params, dict):
        raise SpecFileError(f"{where}: 'params' must be an object")
    try:
        if name == ROTATION:
            return MapDescriptor(name, parse_fraction(params.get("alpha", 0), f"{where}.alpha"))
        if name == TIMES_M:
            m = params.get("m")
            if not isinstance(m, int):
                raise SpecFileError(f"{where}.m: expected an integer")
            return MapDescriptor(name, m)
        if name == MORSE_SMALE:
            return MapDescriptor(name, parse_fraction(params.get("mu", 0), f"{where}.mu"))
        return MapDescriptor(name)
    except SpecFileError:
        raise
    except Exception as exc:
        raise SpecFileError(f"{where}: {exc}") from exc


def system_to_dict(system: IfsSystem, expected: Optional[dict] = None,
                   params: Optional[AnalysisParams] = None) -> dict:
    doc = {
        "space": {"kind": system.space.kind, "resolution": system.space.resolution},
        "maps": [descriptor_to_dict(m) for m in system.maps],
        "options": {
            "adjoin_identity": system.options.adjoin_identity,
            "symmetric_closure": system.options.symmetric_closure,
            "use_inverse_family": system.options.use_inverse_family,
        },
    }
    if expected:
        doc["expected"] = dict(expected)
    if params is not None:
        doc["analysis"] = params_to_dict(params)
    return doc


def params_to_dict(params: AnalysisParams) -> dict:
    out = {
        "horizon": params.horizon,
        "basis_radius": encode_fraction(params.basis_radius),
        "tolerance": encode_fraction(params.tolerance),
        "delta": encode_fraction(params.delta),
        "rng_seed": params.rng_seed,
        "chain_count": params.chain_count,
        "chain_length": params.chain_length,
        "minimality_bound": params.minimality_bound,
    }
    if params.epsilon is not None:
        out["epsilon"] = encode_fraction(params.epsilon)
    return out


def default_params(space: DiscreteSpace) -> AnalysisParams:
    radius = space.cell_size
    return AnalysisParams(
        horizon=4 * space.cell_count,
        basis_radius=radius,
        tolerance=coherent_tolerance(space, radius),
        delta=Fraction(3, 2) * space.cell_size,
    )


def params_from_dict(data: dict, space: DiscreteSpace, where: str = "analysis") -> AnalysisParams:
    base = default_params(space)
    if not data:
        return base
    if not isinstance(data, dict):
        raise SpecFileError(f"{where}: must be an object")

    def frac(key, fallback):
        return parse_fraction(data[key], f"{where}.{key}") if key in data else fallback

    def integer(key, fallback):
        if key in data:
            if not isinstance(data[key], int):
                raise SpecFileError(f"{where}.{key}: expected an integer")
            return data[key]
        return fallback

    epsilon = frac("epsilon", base.epsilon) if "epsilon" in data else base.epsilon
    return AnalysisParams(
        horizon=integer("horizon", base.horizon),
        basis_radius=frac("basis_radius", base.basis_radius),
        tolerance=frac("tolerance", base.tolerance),
        delta=frac("delta", base.delta),
        rng_seed=integer("rng_seed", base.rng_seed),
        epsilon=epsilon,
        chain_count=integer("chain_count", base.chain_count),
        chain_length=integer("chain_length", base.chain_length),
        minimality_bound=integer("minimality_bound", base.minimality_bound),
    )


def system_from_dict(doc: dict, where: str = "system") -> tuple[IfsSystem, dict, dict]:
    """Returns (system, expected, raw analysis dict)."""
    if not isinstance(doc, dict):
        raise SpecFileError(f"{where}: top level must be an object")
    space_doc = doc.get("space")
    if not isinstance(space_doc, dict):
        raise SpecFileError(f"{where}.space: missing or not an object")
    kind = space_doc.get("kind")
    resolution = space_doc.get("resolution")
    if not isinstance(kind, str):
        raise SpecFileError(f"{where}.space.kind: expected a string")
    if not isinstance(resolution, int):
        raise SpecFileError(f"{where}.space.resolution: expected an integer")
    try:
        space = build_space(kind, resolution)
    except Exception as exc:
        raise SpecFileError(f"{where}.space: {exc}") from exc
    maps_doc = doc.get("maps")
    if not isinstance(maps_doc, list) or not maps_doc:
        raise SpecFileError(f"{where}.maps: expected a non-empty list")
    maps = tuple(
        descriptor_from_dict(m, f"{where}.maps[{i}]") for i, m in enumerate(maps_doc)
    )
    opts_doc = doc.get("options") or {}
    if not isinstance(opts_doc, dict):
        raise SpecFileError(f"{where}.options: must be an object")
    for key, value in opts_doc.items():
        if key not in ("adjoin_identity", "symmetric_closure", "use_inverse_family"):
            raise SpecFileError(f"{where}.options.{key}: unknown option")
        if not isinstance(value, bool):
            raise SpecFileError(f"{where}.options.{key}: expected a boolean")
    options = IfsOptions(
        adjoin_identity=opts_doc.get("adjoin_identity", False),
        symmetric_closure=opts_doc.get("symmetric_closure", False),
        use_inverse_family=opts_doc.get("use_inverse_family", False),
    )
    try:
        system = IfsSystem(space, maps, options)
    except Exception as exc:
        raise SpecFileError(f"{where}: {exc}") from exc
    expected = doc.get("expected") or {}
    if not isinstance(expected, dict):
        raise SpecFileError(f"{where}.expected: must be an object")
    analysis = doc.get("analysis") or {}
    return system, dict(expected), analysis


def load_system_file(path: str) -> tuple[IfsSystem, dict, AnalysisParams]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise SpecFileError(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecFileError(
            f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    system, expected, analysis = system_from_dict(doc, where=path)
    params = params_from_dict(analysis, system.space, where=f"{path}:analysis")
    return system, expected, params


def save_system_file(path: str, system: IfsSystem, expected: Optional[dict] = None,
                     params: Optional[AnalysisParams] = None) -> None:
    doc = system_to_dict(system, expected, params)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def entry_to_file(entry: GalleryEntry, path: str) -> None:
    save_system_file(path, entry.system, entry.expected, entry.params)
