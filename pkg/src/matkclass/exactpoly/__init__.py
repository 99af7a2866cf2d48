"""Exact sparse Laurent polynomial arithmetic and the operators built on it."""
from .laurent import LaurentPoly, Ring, T, U, VarId, VarKind, divide_var_diff, exact_divide
from .linalg import bareiss_det, solve_fraction_free
from .operators import (
    Composition, NotExpressible, Partition, beta_rewrite, complete_homogeneous, demazure_t,
    is_u_symmetric, lowest_degree_part, lowest_part_one_minus, nonnegative_integral,
    one_minus_map, one_minus_truncated, partitions_in_box, ratio_ring, schur_expand_u, schur_u,
    substitute,
)
from .ratfunc import DenomFactor, RatFunc, rat_sum

__all__ = [
    "Composition", "DenomFactor", "LaurentPoly", "NotExpressible", "Partition", "RatFunc",
    "Ring", "T", "U", "VarId", "VarKind", "bareiss_det", "beta_rewrite", "complete_homogeneous",
    "demazure_t", "divide_var_diff", "exact_divide", "is_u_symmetric", "lowest_degree_part",
    "lowest_part_one_minus", "nonnegative_integral", "one_minus_map", "one_minus_truncated",
    "partitions_in_box", "rat_sum", "ratio_ring", "schur_expand_u", "schur_u",
    "solve_fraction_free", "substitute",
]
