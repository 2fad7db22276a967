"""Exact symbolic computation in the general conformal algebra gc_N."""

from ._backend import name as backend_name
from .decompose import (
    DecompositionReport,
    PhiMap,
    decompose_gc1,
    decompose_gcN,
    similarity_residuals,
    skolem_noether_similarity,
    solve_partition_relations,
)
from .errors import (
    ClaimFailed,
    ConstraintViolated,
    CutoffExceeded,
    DimensionMismatch,
    GcError,
    InconsistentData,
    InputError,
    NotIdempotent,
    NotRegular,
    NotRepresentation,
    NotVirasoro,
    PartitionViolation,
    SingularMatrix,
)
from .gc import (
    GcElement,
    GcLambdaValue,
    J,
    bracket_at,
    canonical_embed,
    check_jacobi,
    check_sesquilinearity,
    check_skew_symmetry,
    combinatorial_identity,
    lambda_bracket,
    unit_element,
)
from .linalg import constant_inverse, exact_solve, rank
from .matrix import PolyMatrix
from .modules import (
    ConformalModule,
    act,
    act_element,
    basis_change,
    check_module_axioms,
    direct_sum,
    dual_module,
    explicit,
    gc_dual,
    gc_standard,
    hv_module,
    restrict_to_virasoro,
    tables_equal,
    vir_module,
)
from .poly import DEL, LAMBDA, MU_, MPoly, Scalar, scalar
from .regularity import check_regular, hv_reduce, vir_semisimple, weight_product
from .virasoro import (
    classify_deg1_grid,
    is_standard,
    is_virasoro,
    make_canonical,
    make_gc1_virasoro,
    make_nonstandard,
    make_standard_deg1,
    make_standard_higher,
)

__version__ = "0.1.0"
