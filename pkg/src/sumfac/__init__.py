"""Sum-factorized Hadamard products of Kronecker-structured operators.

Evaluates (A_1 x ... x A_d) o C, with one dense slot per direction and
diagonal weights elsewhere, in O(d n**(d+1)) work and memory instead of
the O(n**(2d)) dense route.  Ships the sparse kernel, a naive dense
oracle for cross-checking, one-dimensional spectral operators, an
entropy-conservation demonstration for Burgers flux differencing, and a
scaling benchmark with a command-line front end (sumfac-bench).
"""

from .burgers import (
    BurgersState,
    average_flux,
    ec_two_point_flux,
    entropy_time_derivative,
    time_derivative,
    total_entropy,
    volume_residual,
)
from .counting import (
    allocated_numbers,
    multiplication_count,
    reset_allocation_ledger,
    reset_multiplication_count,
)
from .indexing import TensorLayout, flatten, unflatten
from .kernel import (
    SparseFactorSet,
    SparsityPattern,
    TwoPointOperand,
    assemble_basis_factors,
    assemble_operand_factors,
    build_sparsity_pattern,
    hadamard_evaluate,
    hadamard_row_sum,
)
from .operators import (
    GAUSS_LEGENDRE,
    GAUSS_LOBATTO_LEGENDRE,
    Operator1D,
    QuadratureRule,
    gauss_legendre,
    gauss_lobatto_legendre,
    kronecker_apply,
    lagrange_diff_matrix,
    lagrange_interpolation_matrix,
    legendre_vandermonde,
    legendre_vandermonde_derivative,
    make_operator_1d,
    projection_operator,
    tensor_product_weights,
)
from .oracle import (
    DEFAULT_CAPACITY,
    dense_direction_factor,
    dense_hadamard,
    dense_kronecker,
    dense_rank_one_operand,
    gather,
    scatter,
)

__version__ = "0.1.0"

__all__ = [
    "BurgersState",
    "DEFAULT_CAPACITY",
    "GAUSS_LEGENDRE",
    "GAUSS_LOBATTO_LEGENDRE",
    "Operator1D",
    "QuadratureRule",
    "SparseFactorSet",
    "SparsityPattern",
    "TensorLayout",
    "TwoPointOperand",
    "allocated_numbers",
    "average_flux",
    "assemble_basis_factors",
    "assemble_operand_factors",
    "build_sparsity_pattern",
    "dense_direction_factor",
    "dense_hadamard",
    "dense_kronecker",
    "dense_rank_one_operand",
    "ec_two_point_flux",
    "entropy_time_derivative",
    "flatten",
    "gather",
    "gauss_legendre",
    "gauss_lobatto_legendre",
    "hadamard_evaluate",
    "hadamard_row_sum",
    "kronecker_apply",
    "lagrange_diff_matrix",
    "lagrange_interpolation_matrix",
    "legendre_vandermonde",
    "legendre_vandermonde_derivative",
    "make_operator_1d",
    "multiplication_count",
    "projection_operator",
    "reset_allocation_ledger",
    "reset_multiplication_count",
    "scatter",
    "tensor_product_weights",
    "time_derivative",
    "total_entropy",
    "unflatten",
    "volume_residual",
]
