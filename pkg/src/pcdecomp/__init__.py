"""Multiplicative pairwise-comparison matrices under the Hadamard product:
validation, triad consistency analysis, the orthogonal/consistent
decomposition, geometric-mean weights, and the submatrix approximation
iteration for larger matrices."""

from .core import (
    DEFAULT_RECIP_TOL,
    ENTRY_MAX,
    ENTRY_MIN,
    PCMatrix,
    Tolerance,
    Triad,
    hadamard,
    hadamard_inverse,
    identity,
    inconsistency,
    is_consistent,
    new_pc_matrix,
    worst_triad,
)
from .decomp import (
    ConsistentComponent,
    DecompositionResult,
    OrthoComponent,
    decompose,
    hl_closure_check,
    is_in_H,
    is_in_L,
    split_additive,
)
from .extend import (
    IterationTrace,
    SubmatrixSelection,
    TraceStep,
    approximate_once,
    iterate_to_consistency,
    submatrices3,
)
from .io import MatrixDocument, parse, serialize
from .liealg import (
    DetTraceResult,
    SkewMatrix,
    algebra_dim,
    canonical_basis,
    det_trace_check,
    exp_map,
    frobenius_inner,
    is_skew,
    log_map,
    new_skew,
    one_param_subgroup,
)
from .weights import (
    WeightVector,
    geometric_mean_weights,
    matrix_from_weights,
    rank_entities,
    reconstruction_error,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_RECIP_TOL",
    "ENTRY_MAX",
    "ENTRY_MIN",
    "PCMatrix",
    "Tolerance",
    "Triad",
    "hadamard",
    "hadamard_inverse",
    "identity",
    "inconsistency",
    "is_consistent",
    "new_pc_matrix",
    "worst_triad",
    "SkewMatrix",
    "DetTraceResult",
    "algebra_dim",
    "canonical_basis",
    "det_trace_check",
    "exp_map",
    "frobenius_inner",
    "is_skew",
    "log_map",
    "new_skew",
    "one_param_subgroup",
    "ConsistentComponent",
    "DecompositionResult",
    "OrthoComponent",
    "decompose",
    "hl_closure_check",
    "is_in_H",
    "is_in_L",
    "split_additive",
    "WeightVector",
    "geometric_mean_weights",
    "matrix_from_weights",
    "rank_entities",
    "reconstruction_error",
    "IterationTrace",
    "SubmatrixSelection",
    "TraceStep",
    "approximate_once",
    "iterate_to_consistency",
    "submatrices3",
    "MatrixDocument",
    "parse",
    "serialize",
    "__version__",
]
