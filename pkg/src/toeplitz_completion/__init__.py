"""Block Toeplitz and Hankel operators with finite-Blaschke rational symbols."""
from .blaschke import (
    BlaschkeFactor,
    FiniteBlaschkeProduct,
    blaschke,
    coefficient_tail_bound,
    constant,
    divides,
    fourier_analytic,
    gcd,
    is_coprime,
    lcm,
)
from .classify import (
    Status,
    Verdict,
    adaptive_buffer,
    commutator_rank,
    ghr_certificate,
    hyponormal,
    k_hyponormal,
    normal_operator,
    normality_unitary_test,
    psd_check,
    quasinormal_after_shift,
    quasinormal_defect,
    recheck_witness,
)
from .completion import (
    CompletionFamily,
    CompletionStatus,
    CompletionVerdict,
    Tag,
    build_completion,
    classify_candidate,
    verify_completion,
)
from .errors import *  # noqa: F401,F403
from .hardy_ops import (
    TruncatedOperator,
    hankel,
    kernel_vector,
    op_product,
    rank_one_kernel_projector,
    self_commutator,
    toeplitz,
)
from .inner_matrix import (
    Case,
    InnerMatrixFunction,
    coprime_diag,
    coprime_point_test,
    diagonal_hull,
    diagonal_hull_bruteforce,
    is_inner,
    kernel_check,
    kernel_inner_delta,
    kernel_phi_minus,
)
from .symbol import (
    Kind,
    MatrixSymbol,
    ScalarSymbol,
    SymbolTerm,
    coprime_factorization,
    fourier,
    is_normal_symbol,
    load_matrix,
    load_scalar,
    matrix_from_json,
    matrix_to_json,
    split,
    sup_norm,
    z_symbol,
    zbar_symbol,
)

__version__ = "0.1.0"
