"""sephorn: separability analysis of bipartite quantum states.

The library represents states in the Bloch picture (generator expectation
values plus a correlation matrix), decides separability through a battery
of necessary and sufficient criteria built on the multiplicative
inequality families of matrix-product singular values, and emits explicit
separable decompositions whenever it certifies separability.
"""

from .bipartite import (
    BipartiteDecomposed,
    NormalFormResult,
    compose_state,
    decompose_state,
    local_ranks,
    normal_form,
    partial_transpose,
    partial_transpose_matrix,
    project_to_support,
)
from .bloch import (
    BlochRadii,
    from_bloch,
    is_physical,
    purity,
    radii,
    to_bloch,
    transpose_flip,
)
from .criteria import (
    Status,
    Verdict,
    analyze,
    kyfan_necessary_check,
    kyfan_norm,
    kyfan_sufficient_check,
    ppt_check,
    two_qubit_decide,
    verify_decomposition,
)
from .decompose import (
    ENTANGLED,
    NOT_DECOMPOSED_HERE,
    DecompositionOutcome,
    FactorizationFrame,
    SeparableDecomposition,
    SimplexFrame,
    assemble_factor_pair,
    factorization_frame,
    isotropic_decompose,
    kyfan_bound_decomposition,
    pure_state_simplex,
    simplex_frame,
    werner_decompose,
)
from .horn import (
    HornReport,
    TripleSet,
    all_triples,
    check_product_inequalities,
    partition_of,
    product_singulars_feasible,
    triple_set,
)
from .linalg import (
    Svd,
    complete_orthonormal,
    eigh_descending,
    random_orthogonal,
    random_unitary,
    svd,
)
from .states import bell, isotropic, p_zero, random_density, werner
from .su import antisymmetric_indices, generator_basis, symmetric_structure_tensor

__version__ = "0.1.0"

__all__ = [
    "BipartiteDecomposed",
    "BlochRadii",
    "DecompositionOutcome",
    "ENTANGLED",
    "FactorizationFrame",
    "HornReport",
    "NOT_DECOMPOSED_HERE",
    "NormalFormResult",
    "SeparableDecomposition",
    "SimplexFrame",
    "Status",
    "Svd",
    "TripleSet",
    "Verdict",
    "all_triples",
    "analyze",
    "antisymmetric_indices",
    "assemble_factor_pair",
    "bell",
    "check_product_inequalities",
    "complete_orthonormal",
    "compose_state",
    "decompose_state",
    "eigh_descending",
    "factorization_frame",
    "from_bloch",
    "generator_basis",
    "is_physical",
    "isotropic",
    "isotropic_decompose",
    "kyfan_bound_decomposition",
    "kyfan_necessary_check",
    "kyfan_norm",
    "kyfan_sufficient_check",
    "local_ranks",
    "normal_form",
    "p_zero",
    "partial_transpose",
    "partial_transpose_matrix",
    "partition_of",
    "ppt_check",
    "product_singulars_feasible",
    "project_to_support",
    "pure_state_simplex",
    "purity",
    "radii",
    "random_density",
    "random_orthogonal",
    "random_unitary",
    "simplex_frame",
    "svd",
    "symmetric_structure_tensor",
    "to_bloch",
    "transpose_flip",
    "triple_set",
    "two_qubit_decide",
    "verify_decomposition",
    "werner",
    "werner_decompose",
]
