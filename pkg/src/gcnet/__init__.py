"""Linear solutions of generalized combination networks via covering
subspace codes: finite-field linear algebra, code construction and
verification, brute-force search, and bound evaluation."""

from .backend import backend_name
from .bounds import (
    GAMMA,
    BoundReport,
    bad_event_prob_ub,
    beta,
    dependency_degree,
    f_exponent,
    field_size_necessary,
    field_size_sufficient,
    g_exponent,
    gamma_exact,
    gap_lower_bound,
    gap_lower_bound_closed,
    middle_lb_lll,
    middle_lb_mrd,
    middle_ub_exact,
    middle_ub_pairwise,
    middle_ub_relaxed,
    theta,
)
from .combnet import (
    GapEstimate,
    LinearSolution,
    NetworkParams,
    SolvabilityClass,
    classify,
    code_from_solution,
    compute_qs,
    compute_qv,
    derive_direct_link_matrices,
    estimate_gap,
    random_solution_search,
    simulate,
    solution_from_code,
    verify_solution,
)
from .ffield import (
    ExtensionField,
    FieldSpec,
    field_create,
    field_from_descriptor,
    field_from_size,
    is_prime_power,
    prime_powers,
)
from .fileio import (
    FileFormatError,
    parse_code,
    parse_matrix,
    parse_params,
    parse_solution,
    render_code,
    render_matrix,
    render_params,
    render_solution,
)
from .grasscode import (
    CoveringCode,
    CoverWitness,
    SearchResult,
    enumerate_grassmannian,
    is_covering_code,
    max_covering_code,
)
from .linalg import (
    MatrixQ,
    SubspaceQ,
    count_rank_matrices,
    dual,
    gaussian_binomial,
    intersection_dim,
    null_space,
    random_matrix,
    solve_exact,
    span_dim,
    stack_matrices,
)
from .rankmetric import (
    LiftedCode,
    RankMetricCode,
    covering_code_from_mrd,
    gabidulin_code,
    lift,
    lifted_mrd_code,
)

__version__ = "0.1.0"

__all__ = [
    "GAMMA",
    "BoundReport",
    "CoverWitness",
    "CoveringCode",
    "ExtensionField",
    "FieldSpec",
    "FileFormatError",
    "GapEstimate",
    "LiftedCode",
    "LinearSolution",
    "MatrixQ",
    "NetworkParams",
    "RankMetricCode",
    "SearchResult",
    "SolvabilityClass",
    "SubspaceQ",
    "backend_name",
    "bad_event_prob_ub",
    "beta",
    "classify",
    "code_from_solution",
    "compute_qs",
    "compute_qv",
    "count_rank_matrices",
    "covering_code_from_mrd",
    "dependency_degree",
    "derive_direct_link_matrices",
    "dual",
    "enumerate_grassmannian",
    "estimate_gap",
    "f_exponent",
    "field_create",
    "field_from_descriptor",
    "field_from_size",
    "field_size_necessary",
    "field_size_sufficient",
    "g_exponent",
    "gabidulin_code",
    "gamma_exact",
    "gap_lower_bound",
    "gap_lower_bound_closed",
    "gaussian_binomial",
    "intersection_dim",
    "is_covering_code",
    "is_prime_power",
    "lift",
    "lifted_mrd_code",
    "max_covering_code",
    "middle_lb_lll",
    "middle_lb_mrd",
    "middle_ub_exact",
    "middle_ub_pairwise",
    "middle_ub_relaxed",
    "null_space",
    "parse_code",
    "parse_matrix",
    "parse_params",
    "parse_solution",
    "prime_powers",
    "random_matrix",
    "random_solution_search",
    "render_code",
    "render_matrix",
    "render_params",
    "render_solution",
    "simulate",
    "solution_from_code",
    "solve_exact",
    "span_dim",
    "stack_matrices",
    "theta",
    "verify_solution",
]
