from branchwidth.linalg.matrix import (
    Mat,
    apply_transition,
    column_basis_mod,
    matmul_mod,
    mod_p,
    nullspace_mod,
    rank_mod,
    row_basis_mod,
    rref,
    rref_mod,
    solve_mod,
)
from branchwidth.linalg.subspace import (
    Subspace,
    dim_intersect,
    subspace_contains,
    subspace_intersect,
    subspace_sum,
    sum_all,
)

__all__ = [
    "Mat",
    "Subspace",
    "apply_transition",
    "column_basis_mod",
    "dim_intersect",
    "matmul_mod",
    "mod_p",
    "nullspace_mod",
    "rank_mod",
    "row_basis_mod",
    "rref",
    "rref_mod",
    "solve_mod",
    "subspace_contains",
    "subspace_intersect",
    "subspace_sum",
    "sum_all",
]
