"""Compiled inner loops for the sparse tensor-product kernel.

Everything here is a plain numba njit function over preallocated numpy
arrays; validation, accounting and object plumbing stay in the pure
Python wrappers.  No fastmath flags: results must be bitwise
reproducible and match the naive oracle's multiplication order
(diagonal weights accumulated in ascending direction order, basis value
applied last).
"""

import numpy as np
from numba import njit


@njit(cache=True)
def fill_pattern(m, n, d, rows, columns):
    """Populate the per-direction (row, column) index pairs.

    Entry k = R * n + l holds, for each direction j, the flat row index
    R (in the direction-j row layout, extent m at slot j and n at the
    others) and the flat column index obtained by replacing digit j of
    the row multi-index with l.
    """
    entries = rows.shape[0]
    for j in range(d):
        for k in range(entries):
            glob = k // n
            l = k - glob * n
            rows[k, j] = glob
            rem = glob
            colflat = 0
            colstride = 1
            for i in range(d):
                ext = m if i == j else n
                digit = rem % ext
                rem //= ext
                cdigit = l if i == j else digit
                colflat += cdigit * colstride
                colstride *= n
            columns[k, j] = colflat


@njit(cache=True)
def assemble_basis(rows, columns, basis, weights, m, n, d, out):
    """Fill out[j] with basis[r_j, c_j] * prod_{i != j} weights[r_i].

    The weight product accumulates in ascending direction order and the
    basis value multiplies last, so entries agree bitwise with a naive
    per-entry evaluation using the same order.
    """
    entries = rows.shape[0]
    for j in range(d):
        colstride_j = 1
        for _ in range(j):
            colstride_j *= n
        for k in range(entries):
            row = rows[k, j]
            counter = k - (k // n) * n
            cj = (columns[k, j] // colstride_j) % n
            rem = row
            rj = 0
            wprod = 1.0
            have_weight = False
            for i in range(d):
                ext = m if i == j else n
                digit = rem % ext
                rem //= ext
                if i == j:
                    rj = digit
                elif have_weight:
                    wprod = wprod * weights[digit]
                else:
                    wprod = weights[digit]
                    have_weight = True
            value = basis[rj, cj]
            out[j, row, counter] = value * wprod if have_weight else value


@njit(cache=True)
def assemble_rank_one(rows, columns, row_values, col_values, n, out):
    """Fill out[j] with row_values[R] * col_values[C] at pattern positions."""
    entries = rows.shape[0]
    d = rows.shape[1]
    for j in range(d):
        for k in range(entries):
            row = rows[k, j]
            counter = k - (k // n) * n
            out[j, row, counter] = row_values[row] * col_values[columns[k, j]]


@njit(cache=True)
def hadamard_dense(a, c, out):
    """Entrywise product of two dense matrices, one scalar at a time."""
    rows, cols = a.shape
    for i in range(rows):
        for j in range(cols):
            out[i, j] = a[i, j] * c[i, j]


@njit(cache=True)
def rank_one_matrix(row_values, col_values, out):
    """Dense operand matrix C with C[i, j] = row_values[i] * col_values[j]."""
    rows = row_values.shape[0]
    cols = col_values.shape[0]
    for i in range(rows):
        for j in range(cols):
            out[i, j] = row_values[i] * col_values[j]
