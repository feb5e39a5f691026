"""Dense brute-force references for the sum-factorized kernel.

Everything here materializes full matrices and is deliberately naive:
entry-by-entry loops, no exploitation of structure beyond what the
definitions state.  Used to cross-check the compressed kernel and as
the O(n**(2d)) baseline in the benchmark.  Matrices larger than the
capacity cap are refused rather than allocated.
"""

from functools import reduce

import numpy as np

from . import _kernels, counting
from .indexing import TensorLayout, unflatten

DEFAULT_CAPACITY = 100_000_000


def _check_capacity(rows, cols, capacity, what):
    if rows * cols > capacity:
        raise ValueError(
            f"{what} would hold {rows * cols} entries, over the capacity "
            f"cap of {capacity}"
        )


def _as_matrix(factor):
    factor = np.asarray(factor, dtype=float)
    if factor.ndim == 1:
        return np.diag(factor)
    if factor.ndim != 2:
        raise ValueError(f"factors must be 1D or 2D, got ndim={factor.ndim}")
    return factor


def dense_kronecker(factors, capacity=DEFAULT_CAPACITY):
    """Full Kronecker product of the factors under the x-fastest layout.

    factors[j] (2D dense, or 1D diagonal) acts along direction j, the
    fastest-varying index, so entry (r, c) is the product of
    factors[j][r_j, c_j] over the digits of r and c.
    """
    if len(factors) == 0:
        raise ValueError("dense_kronecker needs at least one factor")
    mats = [_as_matrix(f) for f in factors]
    rows = int(np.prod([m.shape[0] for m in mats]))
    cols = int(np.prod([m.shape[1] for m in mats]))
    _check_capacity(rows, cols, capacity, "dense Kronecker product")
    # direction 0 varies fastest, so it is the innermost kron factor
    return reduce(np.kron, reversed(mats))


def dense_direction_factor(basis, weights, direction, d, capacity=DEFAULT_CAPACITY):
    """Dense Kronecker factor with the basis in one direction's slot.

    Direction `direction` carries the m-by-n basis; every other slot is
    diag(weights).  Entries are computed one at a time with the weight
    product accumulated in ascending direction order and the basis value
    applied last, matching the kernel's assembly order bitwise.
    """
    basis = np.asarray(basis, dtype=float)
    weights = np.asarray(weights, dtype=float)
    m, n = basis.shape
    if weights.shape != (n,):
        raise ValueError(f"weights shape {weights.shape} does not match ({n},)")
    if direction < 0 or direction >= d:
        raise IndexError(f"direction {direction} out of range [0, {d})")
    row_extents = [n] * d
    row_extents[direction] = m
    row_layout = TensorLayout(row_extents)
    col_layout = TensorLayout([n] * d)
    _check_capacity(row_layout.size, col_layout.size, capacity, "dense factor")
    out = np.zeros((row_layout.size, col_layout.size))
    for r in range(row_layout.size):
        multi = unflatten(r, row_layout)
        wprod = 1.0
        have_weight = False
        for i in range(d):
            if i == direction:
                continue
            if have_weight:
                wprod = wprod * weights[multi[i]]
            else:
                wprod = weights[multi[i]]
                have_weight = True
        base_col = sum(
            multi[i] * col_layout.strides[i] for i in range(d) if i != direction
        )
        stride = col_layout.strides[direction]
        for l in range(n):
            value = basis[multi[direction], l]
            out[r, base_col + l * stride] = value * wprod if have_weight else value
    return out


def dense_hadamard(a, c, out=None):
    """Entrywise product of two dense matrices; counts every multiplication.

    Pass a preallocated `out` to reuse storage across repeated calls.
    """
    a = np.ascontiguousarray(a, dtype=float)
    c = np.ascontiguousarray(c, dtype=float)
    if a.ndim != 2 or a.shape != c.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {c.shape}")
    if out is None:
        out = np.empty(a.shape)
    elif out.shape != a.shape:
        raise ValueError(f"out shape {out.shape} does not match {a.shape}")
    _kernels.hadamard_dense(a, c, out)
    counting.add_multiplications(a.size)
    return out


def dense_rank_one_operand(row_values, col_values, out=None):
    """Full operand matrix C[i, j] = row_values[i] * col_values[j]."""
    row_values = np.ascontiguousarray(row_values, dtype=float)
    col_values = np.ascontiguousarray(col_values, dtype=float)
    if row_values.ndim != 1 or col_values.ndim != 1:
        raise ValueError("operand generators must be 1D arrays")
    shape = (row_values.shape[0], col_values.shape[0])
    if out is None:
        out = np.empty(shape)
    elif out.shape != shape:
        raise ValueError(f"out shape {out.shape} does not match {shape}")
    _kernels.rank_one_matrix(row_values, col_values, out)
    counting.add_multiplications(out.size)
    return out


def scatter(sparse, pattern, direction):
    """Expand one direction's compressed factor to its dense matrix.

    `sparse` may be a SparseFactorSet or a single compressed matrix of
    shape (m*n^(d-1), n).
    """
    if direction < 0 or direction >= pattern.d:
        raise IndexError(f"direction {direction} out of range [0, {pattern.d})")
    factor_matrix = sparse.factor(direction) if hasattr(sparse, "factor") else sparse
    factor_matrix = np.asarray(factor_matrix, dtype=float)
    expected = (pattern.row_space_size, pattern.columns_size_1d)
    if factor_matrix.shape != expected:
        raise ValueError(
            f"factor shape {factor_matrix.shape} does not match {expected}"
        )
    rows = pattern.rows[:, direction]
    cols = pattern.columns[:, direction]
    flat = rows * pattern.column_space_size + cols
    if np.unique(flat).size != flat.size:
        raise RuntimeError(
            "pattern lists a (row, column) position twice; the pattern is corrupt"
        )
    out = np.zeros((pattern.row_space_size, pattern.column_space_size))
    out[rows, cols] = factor_matrix.reshape(-1)
    return out


def gather(dense, pattern, direction):
    """Compress a dense matrix back to the pattern positions (inverse of scatter)."""
    if direction < 0 or direction >= pattern.d:
        raise IndexError(f"direction {direction} out of range [0, {pattern.d})")
    dense = np.asarray(dense, dtype=float)
    expected = (pattern.row_space_size, pattern.column_space_size)
    if dense.shape != expected:
        raise ValueError(f"dense shape {dense.shape} does not match {expected}")
    values = dense[pattern.rows[:, direction], pattern.columns[:, direction]]
    return values.reshape(pattern.row_space_size, pattern.columns_size_1d)
