"""Sum-factorized Hadamard products of Kronecker-structured matrices.

The target object is (A_1 x ... x A_d) o C where factor j is an m-by-n
dense matrix in direction j, every other factor is an n-by-n diagonal of
quadrature weights, and C is a two-point operand evaluated lazily.  Per
direction the result has exactly m * n**d structural nonzeros, n per
row, so it is stored column-compressed as an (m * n**(d-1), n) matrix:
entry (R, k) is the k-th nonzero of dense row R in ascending
dense-column order.

Flat indices use the x-fastest layout of the indexing module; direction
j of the column space has stride n**j.  The full pipeline (pattern,
basis factors, operand factors, entrywise product, row sums) touches
O(d * m * n**d) numbers total, never the n**d by n**d dense operand.
"""

import numpy as np

from . import _kernels, counting
from .indexing import TensorLayout

_INDEX_MAX = np.iinfo(np.int64).max


class SparsityPattern:
    """Per-direction structural nonzeros of the Kronecker factors.

    rows[k, j] and columns[k, j] are flat row/column indices of nonzero
    k in direction j.  Entry k = R * n + l pairs row R with the column
    whose direction-j digit is l; every row therefore appears exactly n
    consecutive times.  Row indices live in the direction-j row layout
    (extent m at slot j, n elsewhere), columns in the all-n layout.
    Arrays are immutable after construction.
    """

    def __init__(self, rows_size_1d, columns_size_1d, d, rows, columns):
        self.rows_size_1d = rows_size_1d
        self.columns_size_1d = columns_size_1d
        self.d = d
        self.rows = rows
        self.columns = columns
        rows.setflags(write=False)
        columns.setflags(write=False)
        counting.register_allocation(rows.size + columns.size)

    @property
    def entry_count(self):
        return self.rows.shape[0]

    @property
    def row_space_size(self):
        return self.rows_size_1d * self.columns_size_1d ** (self.d - 1)

    @property
    def column_space_size(self):
        return self.columns_size_1d**self.d

    def row_layout(self, direction):
        if direction < 0 or direction >= self.d:
            raise IndexError(f"direction {direction} out of range [0, {self.d})")
        extents = [self.columns_size_1d] * self.d
        extents[direction] = self.rows_size_1d
        return TensorLayout(extents)

    def column_layout(self):
        return TensorLayout([self.columns_size_1d] * self.d)

    def __repr__(self):
        return (
            f"SparsityPattern(m={self.rows_size_1d}, n={self.columns_size_1d}, "
            f"d={self.d}, entries={self.entry_count})"
        )


def build_sparsity_pattern(rows_size_1d, columns_size_1d, d):
    """Enumerate the nonzero (row, column) pairs for all d directions.

    For d = 3 and m = n this reproduces, in the same order, the loop
    nest over (i, j, k, l) with row index i n^2 + j n + k and column
    indices i n^2 + j n + l, i n^2 + l n + k, and l n^2 + j n + k for
    directions x, y, z.
    """
    m, n, d = int(rows_size_1d), int(columns_size_1d), int(d)
    if m < 1 or n < 1:
        raise ValueError(f"matrix extents must be positive, got m={m}, n={n}")
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    entries = m * n**d
    if n**d > _INDEX_MAX or entries * d > _INDEX_MAX:
        raise ValueError(
            f"pattern for m={m}, n={n}, d={d} overflows the index type"
        )
    rows = np.empty((entries, d), dtype=np.int64)
    columns = np.empty((entries, d), dtype=np.int64)
    _kernels.fill_pattern(m, n, d, rows, columns)
    return SparsityPattern(m, n, d, rows, columns)


class SparseFactorSet:
    """Column-compressed values at the pattern positions, all directions.

    data[j] is the (m * n**(d-1), n) matrix of direction j; data[j][R, k]
    sits at dense position (rows[R*n + k, j], columns[R*n + k, j]).
    """

    def __init__(self, rows_size_1d, columns_size_1d, data):
        self.rows_size_1d = rows_size_1d
        self.columns_size_1d = columns_size_1d
        self.data = data
        counting.register_allocation(data.size)

    @property
    def d(self):
        return self.data.shape[0]

    def factor(self, direction):
        if direction < 0 or direction >= self.d:
            raise IndexError(f"direction {direction} out of range [0, {self.d})")
        return self.data[direction]

    def __repr__(self):
        return (
            f"SparseFactorSet(m={self.rows_size_1d}, n={self.columns_size_1d}, "
            f"d={self.d}, shape={self.data.shape[1:]})"
        )


class TwoPointOperand:
    """Lazy two-point operand C with C[i, j] = f(u_row[i], u_col[j]).

    With func None the operand is the rank-one product u_row[i] *
    u_col[j].  col_values is indexed by flat column index; row_values
    (defaulting to col_values) by flat row index, which matters for
    rectangular patterns whose row space differs from the column space.
    func must accept numpy arrays elementwise.
    """

    def __init__(self, col_values, row_values=None, func=None):
        col_values = np.asarray(col_values, dtype=float)
        if col_values.ndim != 1:
            raise ValueError("col_values must be a 1D array")
        if not np.all(np.isfinite(col_values)):
            raise ValueError("operand values must be finite")
        if row_values is None:
            row_values = col_values
        else:
            row_values = np.asarray(row_values, dtype=float)
            if row_values.ndim != 1:
                raise ValueError("row_values must be a 1D array")
            if not np.all(np.isfinite(row_values)):
                raise ValueError("operand values must be finite")
        self.col_values = col_values
        self.row_values = row_values
        self.func = func

    @property
    def is_rank_one(self):
        return self.func is None

    def evaluate(self, i, j):
        """Operand value at row index i, column index j (scalar or array)."""
        a = self.row_values[i]
        b = self.col_values[j]
        return a * b if self.func is None else self.func(a, b)


def _check_pattern(pattern):
    if not isinstance(pattern, SparsityPattern):
        raise ValueError(f"expected a SparsityPattern, got {type(pattern).__name__}")


def assemble_basis_factors(pattern, basis, weights):
    """Compressed Kronecker factors from a 1D basis and diagonal weights.

    basis is the m-by-n dense slot shared by all directions; weights is
    the length-n diagonal of the remaining d - 1 slots.  Scattering
    direction j of the result through the pattern reproduces the dense
    Kronecker factor bitwise.  Costs (d - 1) multiplications per stored
    entry.
    """
    _check_pattern(pattern)
    m, n, d = pattern.rows_size_1d, pattern.columns_size_1d, pattern.d
    basis = np.ascontiguousarray(basis, dtype=float)
    weights = np.ascontiguousarray(weights, dtype=float)
    if basis.shape != (m, n):
        raise ValueError(f"basis shape {basis.shape} does not match ({m}, {n})")
    if weights.shape != (n,):
        raise ValueError(f"weights shape {weights.shape} does not match ({n},)")
    out = np.empty((d, pattern.row_space_size, n))
    _kernels.assemble_basis(pattern.rows, pattern.columns, basis, weights, m, n, d, out)
    counting.add_multiplications(pattern.entry_count * d * (d - 1))
    return SparseFactorSet(m, n, out)


def assemble_operand_factors(pattern, operand):
    """Operand values gathered at the pattern positions, all directions.

    Evaluates C only at the m * n**d stored positions per direction; the
    dense operand matrix is never formed.  The rank-one form costs one
    multiplication per stored entry.
    """
    _check_pattern(pattern)
    if not isinstance(operand, TwoPointOperand):
        raise ValueError(
            f"expected a TwoPointOperand, got {type(operand).__name__}"
        )
    m, n, d = pattern.rows_size_1d, pattern.columns_size_1d, pattern.d
    if operand.col_values.shape[0] != pattern.column_space_size:
        raise ValueError(
            f"operand col_values length {operand.col_values.shape[0]} does not "
            f"match the column space {pattern.column_space_size}"
        )
    if operand.row_values.shape[0] != pattern.row_space_size:
        raise ValueError(
            f"operand row_values length {operand.row_values.shape[0]} does not "
            f"match the row space {pattern.row_space_size}"
        )
    if operand.is_rank_one:
        out = np.empty((d, pattern.row_space_size, n))
        _kernels.assemble_rank_one(
            pattern.rows, pattern.columns, operand.row_values,
            operand.col_values, n, out,
        )
        counting.add_multiplications(pattern.entry_count * d)
        return SparseFactorSet(m, n, out)
    values = operand.func(
        operand.row_values[pattern.rows], operand.col_values[pattern.columns]
    )
    out = np.ascontiguousarray(values.T).reshape(d, pattern.row_space_size, n)
    return SparseFactorSet(m, n, out)


def hadamard_evaluate(basis_factors, operand_factors):
    """Entrywise product of basis and operand factor sets.

    This is the Hadamard evaluation stage: exactly one multiplication
    per stored entry, d * m * n**d in total.
    """
    if basis_factors.data.shape != operand_factors.data.shape:
        raise ValueError(
            f"factor set shapes differ: {basis_factors.data.shape} vs "
            f"{operand_factors.data.shape}"
        )
    out = basis_factors.data * operand_factors.data
    counting.add_multiplications(out.size)
    return SparseFactorSet(
        basis_factors.rows_size_1d, basis_factors.columns_size_1d, out
    )


def hadamard_row_sum(product, pattern):
    """Row sums of the scattered product, per direction.

    Returns a (d, m * n**(d-1)) array; row j holds the product of
    direction j applied to the all-ones vector.  Additions only.
    """
    _check_pattern(pattern)
    expected = (pattern.d, pattern.row_space_size, pattern.columns_size_1d)
    if product.data.shape != expected:
        raise ValueError(
            f"product shape {product.data.shape} does not match pattern "
            f"(expected {expected})"
        )
    out = product.data.sum(axis=2)
    counting.register_allocation(out.size)
    return out
