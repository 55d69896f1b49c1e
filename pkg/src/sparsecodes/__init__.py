"""Convex realizations of 2-sparse neural codes.

Exact rational geometry for small arrangements of convex bodies, the
constructions that realize 2-sparse codes in dimensions 1, 2 and 3, and
bounds on the embedding dimension.
"""

from .accel import backend
from .bodies import (
    CLOSED,
    OPEN,
    Arrangement,
    ArrangementError,
    DimensionMismatch,
    Disk,
    Empty,
    Interval,
    Offset,
    Polygon,
    Polytope3,
    Segment,
    arrangement,
    ball,
    point_body,
)
from .classify import (
    DimensionReport,
    TooManyNeurons,
    detect_full_subdivision,
    embedding_dimension,
    interval_search,
    is_planar,
)
from .code import (
    CodeParseError,
    Graph,
    NeuralCode,
    NotTwoSparse,
    code_graph,
    complete_graph,
    complete_multipartite_graph,
    full_subdivision,
    graph_full_code,
    intersection_violation,
    is_intersection_complete,
    is_k_sparse,
    is_realizable,
    parse_code,
    simplicial_complex,
    skeleton,
)
from .kernel import (
    Indeterminate,
    NoFreeBoundary,
    boundary_free_point,
    contains,
    pair_intersects,
    relation,
    relation_matrix,
    triple_intersects,
)
from .realize2d import (
    CodeMismatch,
    NotNested,
    PackingResult,
    SnapFailed,
    code_to_graph_realization,
    graph_to_code_realization,
    pack_graph,
    realize_complete_multipartite,
    realize_nested,
    realize_planar,
)
from .realize3d import CertificationFailed, NotRealizable, moment_points, realize_code_r3, realize_graph_r3
from .transforms import (
    NotTwoSparseArrangement,
    choose_inflate_epsilon,
    choose_trim_epsilon,
    closed_to_open,
    inflate,
    open_to_closed,
    trim,
)
from .verify import RealizationCertificate, certify, compute_code, sample_code

__version__ = "0.1.0"

__all__ = [
    "Arrangement",
    "arrangement",
    "ArrangementError",
    "backend",
    "ball",
    "boundary_free_point",
    "CertificationFailed",
    "certify",
    "choose_inflate_epsilon",
    "choose_trim_epsilon",
    "CLOSED",
    "closed_to_open",
    "code_graph",
    "code_to_graph_realization",
    "CodeMismatch",
    "CodeParseError",
    "complete_graph",
    "complete_multipartite_graph",
    "compute_code",
    "contains",
    "detect_full_subdivision",
    "DimensionMismatch",
    "DimensionReport",
    "Disk",
    "embedding_dimension",
    "Empty",
    "full_subdivision",
    "Graph",
    "graph_full_code",
    "graph_to_code_realization",
    "Indeterminate",
    "inflate",
    "intersection_violation",
    "Interval",
    "interval_search",
    "is_intersection_complete",
    "is_k_sparse",
    "is_planar",
    "is_realizable",
    "moment_points",
    "NeuralCode",
    "NoFreeBoundary",
    "NotNested",
    "NotRealizable",
    "NotTwoSparse",
    "NotTwoSparseArrangement",
    "Offset",
    "OPEN",
    "open_to_closed",
    "pack_graph",
    "PackingResult",
    "pair_intersects",
    "parse_code",
    "point_body",
    "Polygon",
    "Polytope3",
    "RealizationCertificate",
    "realize_code_r3",
    "realize_complete_multipartite",
    "realize_graph_r3",
    "realize_nested",
    "realize_planar",
    "relation",
    "relation_matrix",
    "sample_code",
    "Segment",
    "simplicial_complex",
    "skeleton",
    "SnapFailed",
    "TooManyNeurons",
    "trim",
    "triple_intersects",
]
