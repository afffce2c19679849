"""Named, parameter-fixed systems exercising every certified phenomenon.

Irrational rotation angles do not exist on a grid; entries use
high-denominator rational surrogates whose cell shift is coprime to the
resolution, and every expected verdict is scoped to the entry's resolution
and horizon.  Angle 263/840 (and its rescalings) is the grid-coprime
rounding of 355/1130.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .ifs import IfsOptions, IfsSystem
from .maps import morse_smale, rotation, times_m, torus_shear_1, torus_shear_2
from .space import build_space, coherent_tolerance

PROVED = "proved-at-resolution"
REFUTED = "refuted-at-resolution"


@dataclass(frozen=True)
class AnalysisParams:
    horizon: int
    basis_radius: Fraction
    tolerance: Fraction
    delta: Fraction
    rng_seed: int = 42
    epsilon: Optional[Fraction] = None  # shadowing radius
    chain_count: int = 20
    chain_length: int = 20
    minimality_bound: int = 4


@dataclass(frozen=True)
class GalleryEntry:
    id: str
    system: IfsSystem
    params: AnalysisParams
    expected: dict[str, str]
    notes: str
    refutation_resolution: Optional[int] = None


def _params(space, horizon, radius_cells=Fraction(1), delta_cells=Fraction(3, 2), **kw):
    radius = space.cell_size * radius_cells
    return AnalysisParams(
        horizon=horizon,
        basis_radius=radius,
        tolerance=coherent_tolerance(space, radius),
        delta=space.cell_size * delta_cells,
        **kw,
    )


def build_gallery() -> list[GalleryEntry]:
    entries: list[GalleryEntry] = []

    s1024 = build_space("circle", 1024)
    entries.append(
        GalleryEntry(
            id="doubling",
            system=IfsSystem(s1024, (times_m(2),)),
            params=_params(s1024, horizon=4096),
            expected={
                "exactness": PROVED,
                "mixing": PROVED,
                "attractor": PROVED,
                "inverse-attractor": PROVED,
                "physical": PROVED,
            },
            notes="expanding circle map: exact, mixing, full space attracts "
            "under the inverse",
        )
    )

    s840 = build_space("circle", 840)
    entries.append(
        GalleryEntry(
            id="rotation_pair",
            system=IfsSystem(s840, (rotation(Fraction(263, 840)), rotation(Fraction(298, 840)))),
            params=_params(s840, horizon=4096),
            expected={
                "totally-minimal-forward": PROVED,
                "totally-minimal-backward": PROVED,
                "exactness": REFUTED,
                "mixing": REFUTED,
                "attractor": REFUTED,
                "inverse-attractor": REFUTED,
                "physical": REFUTED,
            },
            notes="two rotations with rational offset 35/840: totally minimal "
            "both ways yet nothing attracts and nothing is exact",
        )
    )

    st16 = build_space("torus", 16)
    entries.append(
        GalleryEntry(
            id="torus_shears",
            system=IfsSystem(st16, (torus_shear_1(), torus_shear_2())),
            params=_params(st16, horizon=2048, radius_cells=Fraction(3, 2)),
            expected={
                "chain-transitive": PROVED,
                "mixing": PROVED,
                "physical": PROVED,
                "exactness": REFUTED,
            },
            notes="lattice shears: mixing without exactness; the finite "
            "orbit of the half-integer point blocks coverage",
            refutation_resolution=4,
        )
    )

    s256 = build_space("circle", 256)
    entries.append(
        GalleryEntry(
            id="recording_ifs",
            system=IfsSystem(
                s256, (rotation(Fraction(81, 256)),), IfsOptions(adjoin_identity=True)
            ),
            params=_params(s256, horizon=1024),
            expected={"exactness": PROVED, "mixing": PROVED, "physical": PROVED},
            notes="minimal rotation with the identity adjoined: iterates "
            "accumulate past images, forcing exactness",
        )
    )

    entries.append(
        GalleryEntry(
            id="symmetric_minimal",
            system=IfsSystem(
                s256,
                (rotation(Fraction(81, 256)), rotation(Fraction(175, 256))),
                IfsOptions(symmetric_closure=True),
            ),
            params=_params(s256, horizon=1024, radius_cells=Fraction(3, 2)),
            expected={"exactness": PROVED, "mixing": PROVED, "physical": PROVED},
            notes="symmetric minimal rotation family: exact at the basis "
            "scale that sees both step parities",
        )
    )

    s512 = build_space("circle", 512)
    entries.append(
        GalleryEntry(
            id="repelling_minimal",
            system=IfsSystem(s512, (rotation(Fraction(161, 512)), morse_smale(Fraction(1, 8)))),
            params=_params(s512, horizon=2048),
            expected={
                "backward-minimal": PROVED,
                "repelling-certificate": PROVED,
                "exactness": PROVED,
                "mixing": PROVED,
                "physical": PROVED,
            },
            notes="backward minimal family whose sine map repels at cell 0: "
            "the repelling ball certificate promotes minimality to exactness",
        )
    )

    s4096 = build_space("circle", 4096)
    entries.append(
        GalleryEntry(
            id="chain_shadow",
            system=IfsSystem(s4096, (times_m(2),)),
            params=AnalysisParams(
                horizon=16384,
                basis_radius=s4096.cell_size,
                tolerance=Fraction(0),
                delta=Fraction(1, 256),
                rng_seed=42,
                epsilon=Fraction(1, 128),
                chain_count=20,
                chain_length=20,
            ),
            expected={
                "chain-transitive": PROVED,
                "chain-mixing": PROVED,
                "shadowing": PROVED,
                "physical": PROVED,
            },
            notes="doubling at high resolution: chain transitive with "
            "per-chain shadowing cells, hence the space attracts physically",
        )
    )
    return entries


def gallery_entry(entry_id: str) -> GalleryEntry:
    for entry in build_gallery():
        if entry.id == entry_id:
            return entry
    raise KeyError(f"no gallery entry named {entry_id!r}")


def gallery_ids() -> list[str]:
    return [e.id for e in build_gallery()]
