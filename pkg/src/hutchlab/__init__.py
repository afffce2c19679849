"""hutchlab: cell-resolution certification of attractor, mixing, exactness
and chain properties for relations and iterated function systems on compact
metric spaces."""

from .cells import CellSet
from .space import (
    DiscreteSpace,
    ball,
    basis,
    build_space,
    coherent_tolerance,
    hausdorff,
)
from .relation import (
    CellRelation,
    compose,
    identity_relation,
    image,
    inverse,
    iterate_image,
)
from .maps import (
    MapDescriptor,
    identity_map,
    morse_smale,
    rasterize_map,
    rotation,
    times_m,
    torus_shear_1,
    torus_shear_2,
)
from .ifs import (
    IfsOptions,
    IfsSystem,
    hutchinson,
    minimality_check,
    repelling_cell_certificate,
    totally_minimal_check,
    word_image,
)
from .attractor import (
    AttractionTrace,
    attraction_trace,
    attractor_check,
    d_phi,
    equicontinuity_report,
    physical_attractor_check,
    proper_attractor_witness_search,
    uniform_attraction_bound,
)
from .topology import (
    ChainGraph,
    PseudoOrbit,
    build_chain_graph,
    chain_mixing_check,
    chain_transitive_check,
    exactness_check,
    generate_pseudo_orbit,
    mixing_check,
    open_escape,
    shadowing_search,
)
from .inverse_limit import (
    BackwardOrbit,
    backward_dense_orbit,
    paired_backward_orbits,
)
from .oracle import (
    brute_attractor,
    brute_exactness,
    brute_mixing,
    brute_physical,
    brute_property_lattice,
)
from .gallery import AnalysisParams, GalleryEntry, build_gallery, gallery_entry
from .verdicts import Verdict

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
