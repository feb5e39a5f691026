"""Dense brute-force references: Kronecker builds, Hadamard, scatter/gather."""

import numpy as np
import pytest

from sumfac import (
    TwoPointOperand,
    assemble_basis_factors,
    assemble_operand_factors,
    build_sparsity_pattern,
    counting,
    dense_direction_factor,
    dense_hadamard,
    dense_kronecker,
    dense_rank_one_operand,
    gather,
    scatter,
)


def test_kronecker_of_identities_is_identity():
    out = dense_kronecker([np.eye(2), np.eye(3), np.eye(2)])
    np.testing.assert_array_equal(out, np.eye(12))


def test_kronecker_with_scalar_factor_scales():
    b = np.arange(9.0).reshape(3, 3)
    np.testing.assert_array_equal(dense_kronecker([b, np.array([[2.5]])]), 2.5 * b)
    np.testing.assert_array_equal(dense_kronecker([np.array([[2.5]]), b]), 2.5 * b)


def test_kronecker_diagonal_times_dense_is_block_diagonal():
    # slow diagonal factor: blocks a_i * B down the diagonal
    a = np.array([3.0, 7.0])
    b = np.array([[1.0, 2.0], [4.0, 8.0]])
    out = dense_kronecker([b, a])  # direction 0 (fast) carries B
    expected = np.zeros((4, 4))
    expected[:2, :2] = a[0] * b
    expected[2:, 2:] = a[1] * b
    np.testing.assert_array_equal(out, expected)


def test_kronecker_entry_formula_x_fastest():
    rng = np.random.default_rng(0)
    mats = [rng.standard_normal((2, 2)) for _ in range(3)]
    out = dense_kronecker(mats)
    # entry ((r0,r1,r2),(c0,c1,c2)) = prod_j mats[j][r_j, c_j], digit 0 fastest
    for r in range(8):
        for c in range(8):
            rd = (r % 2, (r // 2) % 2, r // 4)
            cd = (c % 2, (c // 2) % 2, c // 4)
            expected = mats[0][rd[0], cd[0]] * mats[1][rd[1], cd[1]] * mats[2][rd[2], cd[2]]
            assert out[r, c] == pytest.approx(expected, rel=1e-15)


def test_kronecker_accepts_diagonal_markers():
    w = np.array([2.0, 3.0])
    b = np.eye(2)
    np.testing.assert_array_equal(
        dense_kronecker([b, w]), dense_kronecker([b, np.diag(w)])
    )


def test_kronecker_capacity_cap():
    with pytest.raises(ValueError):
        dense_kronecker([np.ones((100, 100)), np.ones((100, 100))], capacity=10_000)
    with pytest.raises(ValueError):
        dense_kronecker([])
    with pytest.raises(ValueError):
        dense_kronecker([np.ones((2, 2, 2))])


@pytest.mark.parametrize("n", (2, 3, 4))
def test_block_diagonal_identity_for_diagonal_slow_factor(n):
    # with the slow factor diagonal, (diag(a) (x) B) o C is block
    # diagonal with blocks a_i * (B o C_ii)
    rng = np.random.default_rng(n)
    a = rng.uniform(0.5, 2.0, n)
    b = rng.standard_normal((n, n))
    c = rng.standard_normal((n * n, n * n))
    out = dense_hadamard(dense_kronecker([b, a]), c)
    for i in range(n):
        for j in range(n):
            block = out[i * n : (i + 1) * n, j * n : (j + 1) * n]
            if i == j:
                cij = c[i * n : (i + 1) * n, i * n : (i + 1) * n]
                np.testing.assert_allclose(block, a[i] * (b * cij), rtol=1e-14)
            else:
                np.testing.assert_array_equal(block, np.zeros((n, n)))


@pytest.mark.parametrize("n", (2, 3))
def test_block_identity_for_general_slow_factor(n):
    # block (i, j) of (A (x) B) o C is A_ij * (B o C_ij)
    rng = np.random.default_rng(10 + n)
    a = rng.standard_normal((n, n))
    b = rng.standard_normal((n, n))
    c = rng.standard_normal((n * n, n * n))
    out = dense_hadamard(dense_kronecker([b, a]), c)
    for i in range(n):
        for j in range(n):
            block = out[i * n : (i + 1) * n, j * n : (j + 1) * n]
            cij = c[i * n : (i + 1) * n, j * n : (j + 1) * n]
            np.testing.assert_allclose(block, a[i, j] * (b * cij), rtol=1e-13, atol=1e-15)


def test_hadamard_with_ones_and_zeros():
    a = np.arange(6.0).reshape(2, 3)
    np.testing.assert_array_equal(dense_hadamard(a, np.ones((2, 3))), a)
    np.testing.assert_array_equal(
        dense_hadamard(a, np.zeros((2, 3))), np.zeros((2, 3))
    )


def test_hadamard_rejects_shape_mismatch():
    with pytest.raises(ValueError):
        dense_hadamard(np.ones((2, 3)), np.ones((3, 2)))
    with pytest.raises(ValueError):
        dense_hadamard(np.ones((2, 2)), np.ones((2, 2)), out=np.empty((3, 3)))


def test_hadamard_multiplication_count_is_matrix_size():
    # the dense baseline pays n**(2d) multiplications per direction
    d, n = 2, 3
    a = np.ones((n**d, n**d))
    counting.reset_multiplication_count()
    dense_hadamard(a, a)
    assert counting.multiplication_count() == n ** (2 * d)


def test_rank_one_operand_matrix():
    row = np.array([1.0, 2.0])
    col = np.array([3.0, 5.0, 7.0])
    out = dense_rank_one_operand(row, col)
    np.testing.assert_array_equal(out, np.outer(row, col))
    with pytest.raises(ValueError):
        dense_rank_one_operand(np.ones((2, 2)), col)


@pytest.mark.parametrize("n", (2, 3))
def test_two_diagonal_factors_have_n4_nonzeros(n):
    # d=3 with a fully dense slot and nonzero diagonals elsewhere:
    # exactly n**(d+1) structural nonzeros
    rng = np.random.default_rng(n)
    basis = rng.uniform(0.5, 1.5, (n, n))
    weights = rng.uniform(0.5, 1.5, n)
    for j in range(3):
        dense = dense_direction_factor(basis, weights, j, 3)
        assert np.count_nonzero(dense) == n**4


def test_direction_factor_equals_kronecker_build():
    rng = np.random.default_rng(8)
    basis = rng.standard_normal((2, 3))
    weights = rng.uniform(0.5, 1.5, 3)
    for d in (1, 2, 3):
        for j in range(d):
            factors = [weights] * d
            factors[j] = basis
            via_kron = dense_kronecker(factors)
            via_loop = dense_direction_factor(basis, weights, j, d)
            np.testing.assert_allclose(via_loop, via_kron, rtol=1e-15)


def test_direction_factor_validation():
    with pytest.raises(IndexError):
        dense_direction_factor(np.eye(3), np.ones(3), 2, 2)
    with pytest.raises(ValueError):
        dense_direction_factor(np.eye(3), np.ones(4), 0, 2)
    with pytest.raises(ValueError):
        dense_direction_factor(np.eye(10), np.ones(10), 0, 3, capacity=1000)


def test_scatter_nonzero_count_and_identity():
    pattern = build_sparsity_pattern(3, 3, 2)
    rng = np.random.default_rng(1)
    values = rng.uniform(0.5, 1.5, (pattern.row_space_size, 3))
    dense = scatter(values, pattern, 0)
    assert np.count_nonzero(dense) == pattern.entry_count
    factors = assemble_basis_factors(pattern, np.eye(3), np.ones(3))
    np.testing.assert_array_equal(scatter(factors.factor(0), pattern, 0), np.eye(9))


def test_scatter_accepts_factor_sets():
    pattern = build_sparsity_pattern(2, 2, 2)
    factors = assemble_basis_factors(pattern, np.eye(2), np.ones(2))
    np.testing.assert_array_equal(
        scatter(factors, pattern, 1), scatter(factors.factor(1), pattern, 1)
    )


def test_gather_scatter_round_trip():
    rng = np.random.default_rng(9)
    pattern = build_sparsity_pattern(2, 4, 2)
    operand = TwoPointOperand(
        rng.standard_normal(16), row_values=rng.standard_normal(8)
    )
    factors = assemble_operand_factors(pattern, operand)
    for j in range(2):
        dense = scatter(factors.factor(j), pattern, j)
        np.testing.assert_array_equal(gather(dense, pattern, j), factors.factor(j))


def test_scatter_gather_validation():
    pattern = build_sparsity_pattern(2, 2, 2)
    with pytest.raises(IndexError):
        scatter(np.ones((4, 2)), pattern, 2)
    with pytest.raises(ValueError):
        scatter(np.ones((3, 3)), pattern, 0)
    with pytest.raises(IndexError):
        gather(np.ones((4, 4)), pattern, -1)
    with pytest.raises(ValueError):
        gather(np.ones((4, 5)), pattern, 0)
