# Surface (rectangular) variant: the dense slot is an m x n facet
# interpolation matrix with m < n, the other d-1 slots stay diagonal.
# The compressed factors now have m n^(d-1) rows but the same machinery
# applies; values are cross-checked against the dense oracle.
#
# $ python demos/surface_facets.py

import numpy as np

from sumfac import (
    TwoPointOperand,
    assemble_basis_factors,
    assemble_operand_factors,
    build_sparsity_pattern,
    dense_direction_factor,
    dense_hadamard,
    dense_rank_one_operand,
    gauss_legendre,
    hadamard_evaluate,
    lagrange_interpolation_matrix,
    scatter,
)

rng = np.random.default_rng(4)
d, n = 3, 4
volume = gauss_legendre(n)

for m in (1, 2, 3):
    # interpolate from the n volume nodes to m facet cubature nodes
    facet_nodes = gauss_legendre(m).nodes
    interp = lagrange_interpolation_matrix(volume.nodes, facet_nodes)

    pattern = build_sparsity_pattern(m, n, d)
    basis = assemble_basis_factors(pattern, interp, volume.weights)
    row_c = rng.uniform(1e-8, 30.0, m * n ** (d - 1))
    col_c = rng.uniform(1e-8, 30.0, n**d)
    operand = TwoPointOperand(col_c, row_values=row_c)
    product = hadamard_evaluate(
        basis, assemble_operand_factors(pattern, operand)
    )

    dense_c = dense_rank_one_operand(row_c, col_c)
    worst = 0.0
    for j in range(d):
        ref = dense_hadamard(
            dense_direction_factor(interp, volume.weights, j, d), dense_c
        )
        got = scatter(product.factor(j), pattern, j)
        worst = max(worst, np.max(np.abs(got - ref)) / np.max(np.abs(ref)))
    rows, cols = m * n ** (d - 1), n**d
    print(f"m={m}, n={n}: factors are {rows}x{n} compressed "
          f"(dense {rows}x{cols}), max rel err vs oracle {worst:.2e}")
