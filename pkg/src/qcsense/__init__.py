"""Infer the intrinsic dimension of a space sensed by unknown quasi-convex
functions, using only the m x n measurement matrix.

Only the per-row rank orders of the matrix enter any computation, so every
result is invariant under monotone re-scalings of the individual sensors.
"""

from .ingest import (
    DataMatrix,
    OrderTable,
    IngestError,
    DuplicateInRowError,
    NonFiniteError,
    NonNumericFieldError,
    RaggedRowsError,
    load_matrix,
    order_table,
)
from .dowker import (
    GradeVector,
    SimplicialComplex,
    Filtration,
    dowker_at,
    dowker_at_nerve,
    hat_R_n,
    ray_filtration,
)
from .persistence import (
    PersistenceDiagram,
    PersistenceInterval,
    MaxLengths,
    persistence_intervals,
    max_lengths,
    betti_numbers_by_elimination,
)
from .estimator import (
    LkProfile,
    BoxplotSummary,
    SubsampleResult,
    EstimateResult,
    compute_Lk,
    d_hat_low,
    subsample_points,
    subsample_functions,
    decide_dimension,
)
from .central import (
    CentralReport,
    CompletenessResult,
    discretized_central_region,
    completeness_test,
)
from .geometry import (
    RegularPairSpec,
    PointCloud,
    ConeClass,
    Cent1Result,
    McEstimate,
    sample_pair,
    hull_membership,
    hull_distances,
    check_sequence_realizable,
    realize_function,
    cone_classify,
    cone_classify_sampled,
    cent1_membership,
    cent0_predicate,
    general_direction_check,
    mc_measure,
    simplex_with_barycenter,
)
from .interleave import InterleaveResult, interleaving_distance

__version__ = "0.1.0"

__all__ = [
    "DataMatrix",
    "OrderTable",
    "IngestError",
    "DuplicateInRowError",
    "NonFiniteError",
    "NonNumericFieldError",
    "RaggedRowsError",
    "load_matrix",
    "order_table",
    "GradeVector",
    "SimplicialComplex",
    "Filtration",
    "dowker_at",
    "dowker_at_nerve",
    "hat_R_n",
    "ray_filtration",
    "PersistenceDiagram",
    "PersistenceInterval",
    "MaxLengths",
    "persistence_intervals",
    "max_lengths",
    "betti_numbers_by_elimination",
    "LkProfile",
    "BoxplotSummary",
    "SubsampleResult",
    "EstimateResult",
    "compute_Lk",
    "d_hat_low",
    "subsample_points",
    "subsample_functions",
    "decide_dimension",
    "CentralReport",
    "CompletenessResult",
    "discretized_central_region",
    "completeness_test",
    "RegularPairSpec",
    "PointCloud",
    "ConeClass",
    "Cent1Result",
    "McEstimate",
    "sample_pair",
    "hull_membership",
    "hull_distances",
    "check_sequence_realizable",
    "realize_function",
    "cone_classify",
    "cone_classify_sampled",
    "cent1_membership",
    "cent0_predicate",
    "general_direction_check",
    "mc_measure",
    "simplex_with_barycenter",
    "InterleaveResult",
    "interleaving_distance",
    "__version__",
]
