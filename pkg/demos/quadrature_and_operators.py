# Build the 1D operator bundles and check their defining identities:
# projection inverts the Vandermonde, differentiation kills constants,
# and the modal derivative route reproduces the nodal one.
#
# $ python demos/quadrature_and_operators.py

import numpy as np

from sumfac import (
    GAUSS_LEGENDRE,
    GAUSS_LOBATTO_LEGENDRE,
    legendre_vandermonde_derivative,
    make_operator_1d,
)

for kind in (GAUSS_LEGENDRE, GAUSS_LOBATTO_LEGENDRE):
    print(f"== {kind} ==")
    for n in (2, 4, 8):
        ops = make_operator_1d(n, kind)
        rule = ops.rule
        print(f"n={n}: nodes {np.array2string(rule.nodes, precision=6)}")
        print(f"      weights sum to {np.sum(rule.weights):.15f}")
        proj_err = np.max(np.abs(ops.projection @ ops.vandermonde - np.eye(n)))
        const_err = np.max(np.abs(ops.diff @ np.ones(n)))
        dchi = legendre_vandermonde_derivative(rule)
        subst_err = np.max(np.abs(dchi @ ops.projection - ops.diff))
        print(f"      |Pi V - I|      = {proj_err:.2e}")
        print(f"      |D 1|           = {const_err:.2e}")
        print(f"      |chi' Pi - D|   = {subst_err:.2e}")
    print()

# the n-point Gauss-Legendre rule integrates x^(2n-1) exactly
ops = make_operator_1d(5, GAUSS_LEGENDRE)
rule = ops.rule
for p in (8, 9):
    exact = 2.0 / (p + 1) if p % 2 == 0 else 0.0
    got = np.dot(rule.weights, rule.nodes**p)
    print(f"integral of x^{p} on [-1,1]: quadrature {got:+.15f}, "
          f"exact {exact:+.15f}")
