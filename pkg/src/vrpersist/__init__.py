"""Vietoris-Rips persistent homology over prime fields."""

from .complex import (
    Filtration,
    FiltrationError,
    Simplex,
    build_vr_filtration,
    check_closure,
    complex_at,
    dump_filtration,
    face_enumeration,
)
from .homology import (
    BoundaryMatrix,
    FieldSpec,
    ReductionResult,
    betti_numbers,
    bruteforce_betti_oracle,
    build_boundary_matrix,
    persistent_betti,
    prefix_betti,
    rank_mod_p,
    reduce,
    reduction,
)
from .metric import (
    DistanceMatrix,
    ParseError,
    PointCloud,
    load_distance_matrix,
    load_point_cloud,
    pairwise_distances,
)
from .persistence import (
    Barcode,
    DiagramPoint,
    PersistenceDiagram,
    PersistencePair,
    build_diagram,
    dumps_pairs,
    loads_pairs,
    pairs_to_scales,
    top_features,
    vr_persistence,
)

__version__ = "0.1.0"
