"""One-dimensional building blocks: quadrature rules, nodal operators,
modal projections, and the sum-factorized Kronecker apply.

All operators act on the reference interval [-1, 1].  Multi-dimensional
behavior comes from Kronecker structure; see `kronecker_apply` and the
kernel module.
"""

from dataclasses import dataclass

import numpy as np

from . import counting

GAUSS_LEGENDRE = "gauss_legendre"
GAUSS_LOBATTO_LEGENDRE = "gauss_lobatto_legendre"

_NEWTON_TOL = 1e-15
_NEWTON_MAX_ITER = 100


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights of an n-point rule on [-1, 1].

    kind is one of GAUSS_LEGENDRE (degree 2n-1 exact) or
    GAUSS_LOBATTO_LEGENDRE (degree 2n-3 exact, includes the endpoints).
    """

    kind: str
    n: int
    nodes: np.ndarray
    weights: np.ndarray


def _legendre_pair(n, x):
    """Values (P_n, P_{n-1}) of the Legendre polynomials at x."""
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev, np.zeros_like(x)
    p = x.copy()
    for k in range(1, n):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    return p, p_prev


def _newton(x, update, what):
    """Damped-free Newton iteration until the step drops below tolerance."""
    for _ in range(_NEWTON_MAX_ITER):
        dx = update(x)
        x = x - dx
        if np.all(np.abs(dx) <= _NEWTON_TOL):
            return x
    bad = int(np.argmax(np.abs(update(x))))
    raise RuntimeError(
        f"Newton iteration for {what} did not converge at node {bad} "
        f"after {_NEWTON_MAX_ITER} iterations"
    )


def _symmetrize(nodes, weights):
    # roots and weights of a symmetric rule come in +- pairs; averaging
    # removes the last rounding asymmetry
    nodes = 0.5 * (nodes - nodes[::-1])
    weights = 0.5 * (weights + weights[::-1])
    return nodes, weights


def gauss_legendre(n):
    """n-point Gauss-Legendre rule, exact through degree 2n - 1.

    Nodes are the roots of P_n, found by Newton iteration from the
    Chebyshev guesses cos(pi (i + 3/4) / (n + 1/2)); weights are
    2 / ((1 - x^2) P_n'(x)^2).
    """
    if n < 1:
        raise ValueError(f"gauss_legendre needs n >= 1, got {n}")
    i = np.arange(n)
    x = np.cos(np.pi * (i + 0.75) / (n + 0.5))

    def step(x):
        pn, pn1 = _legendre_pair(n, x)
        dpn = n * (x * pn - pn1) / (x * x - 1.0)
        return pn / dpn

    x = _newton(x, step, f"Gauss-Legendre nodes (n={n})")
    x = np.sort(x)
    pn, pn1 = _legendre_pair(n, x)
    dpn = n * (x * pn - pn1) / (x * x - 1.0)
    w = 2.0 / ((1.0 - x * x) * dpn * dpn)
    x, w = _symmetrize(x, w)
    return QuadratureRule(GAUSS_LEGENDRE, n, x, w)


def gauss_lobatto_legendre(n):
    """n-point Gauss-Lobatto-Legendre rule, exact through degree 2n - 3.

    Nodes are the endpoints plus the roots of P'_{n-1}; weights are
    2 / (n (n-1) P_{n-1}(x)^2).
    """
    if n < 2:
        raise ValueError(f"gauss_lobatto_legendre needs n >= 2, got {n}")
    if n == 2:
        x = np.array([-1.0, 1.0])
    else:
        i = np.arange(1, n - 1)
        x = np.cos(np.pi * i / (n - 1))
        nu = n - 1

        def step(x):
            pn, pn1 = _legendre_pair(nu, x)
            dpn = nu * (x * pn - pn1) / (x * x - 1.0)
            d2pn = (2.0 * x * dpn - nu * (nu + 1) * pn) / (1.0 - x * x)
            return dpn / d2pn

        x = _newton(x, step, f"Gauss-Lobatto interior nodes (n={n})")
        x = np.concatenate(([-1.0], np.sort(x), [1.0]))
    pn1, _ = _legendre_pair(n - 1, x)
    w = 2.0 / (n * (n - 1) * pn1 * pn1)
    x, w = _symmetrize(x, w)
    return QuadratureRule(GAUSS_LOBATTO_LEGENDRE, n, x, w)


def _barycentric_weights(nodes):
    nodes = np.asarray(nodes, dtype=float)
    n = nodes.shape[0]
    diff = nodes[:, None] - nodes[None, :]
    off = ~np.eye(n, dtype=bool)
    if np.any(diff[off] == 0.0):
        raise ValueError("interpolation nodes must be distinct")
    np.fill_diagonal(diff, 1.0)
    return 1.0 / np.prod(diff, axis=1)


def lagrange_diff_matrix(rule):
    """Differentiation matrix of the Lagrange basis on the rule's nodes.

    Accepts a QuadratureRule or a bare node vector.  D[i, j] = l_j'(x_i)
    via barycentric weights; each diagonal entry is the negated sum of
    its row, so rows sum to zero exactly.
    """
    nodes = np.asarray(getattr(rule, "nodes", rule), dtype=float)
    n = nodes.shape[0]
    lam = _barycentric_weights(nodes)
    d = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i != j:
                d[i, j] = (lam[j] / lam[i]) / (nodes[i] - nodes[j])
        d[i, i] = -np.sum(d[i])
    return d


def lagrange_interpolation_matrix(nodes, targets):
    """Matrix mapping nodal values on `nodes` to values at `targets`.

    Uses the barycentric form; a target that coincides with a node gets
    the corresponding unit row.
    """
    nodes = np.asarray(nodes, dtype=float)
    targets = np.atleast_1d(np.asarray(targets, dtype=float))
    lam = _barycentric_weights(nodes)
    out = np.empty((targets.shape[0], nodes.shape[0]))
    for i, t in enumerate(targets):
        diff = t - nodes
        hit = np.nonzero(diff == 0.0)[0]
        if hit.size:
            out[i] = 0.0
            out[i, hit[0]] = 1.0
        else:
            terms = lam / diff
            out[i] = terms / np.sum(terms)
    return out


def legendre_vandermonde(rule):
    """Vandermonde matrix of the orthonormal Legendre basis at the nodes.

    Column k holds sqrt(k + 1/2) P_k(nodes); columns are orthonormal
    under the continuous L2 inner product on [-1, 1].
    """
    x = rule.nodes
    n = rule.n
    v = np.empty((n, n))
    p_prev = np.ones_like(x)
    v[:, 0] = np.sqrt(0.5) * p_prev
    if n == 1:
        return v
    p = x.copy()
    v[:, 1] = np.sqrt(1.5) * p
    for k in range(1, n - 1):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
        v[:, k + 1] = np.sqrt(k + 1.5) * p
    return v


def legendre_vandermonde_derivative(rule):
    """Derivative counterpart of `legendre_vandermonde`.

    Column k holds sqrt(k + 1/2) P_k'(nodes), built from the recurrence
    P'_{k+1} = P'_{k-1} + (2k + 1) P_k, which is stable at the endpoints.
    """
    x = rule.nodes
    n = rule.n
    dv = np.empty((n, n))
    p_prev = np.ones_like(x)
    dp_prev = np.zeros_like(x)
    dv[:, 0] = np.sqrt(0.5) * dp_prev
    if n == 1:
        return dv
    p = x.copy()
    dp = np.ones_like(x)
    dv[:, 1] = np.sqrt(1.5) * dp
    for k in range(1, n - 1):
        dp_prev, dp = dp, dp_prev + (2 * k + 1) * p
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
        dv[:, k + 1] = np.sqrt(k + 1.5) * dp
    return dv


def projection_operator(rule, vandermonde=None):
    """Quadrature-based L2 projection from nodal to modal coefficients.

    Returns (V^T W V)^{-1} V^T W with W = diag(weights); satisfies
    projection @ V = I whenever the discrete mass matrix is invertible.
    """
    if vandermonde is None:
        vandermonde = legendre_vandermonde(rule)
    vtw = vandermonde.T * rule.weights
    mass = vtw @ vandermonde
    return np.linalg.solve(mass, vtw)


@dataclass(frozen=True)
class Operator1D:
    """Bundle of the 1D operators a tensor-product kernel consumes."""

    rule: QuadratureRule
    diff: np.ndarray
    vandermonde: np.ndarray
    projection: np.ndarray
    weights_diag: np.ndarray


def make_operator_1d(n, kind=GAUSS_LEGENDRE):
    """Construct the Operator1D bundle for an n-point rule of the given kind."""
    if kind == GAUSS_LEGENDRE:
        rule = gauss_legendre(n)
    elif kind == GAUSS_LOBATTO_LEGENDRE:
        rule = gauss_lobatto_legendre(n)
    else:
        raise ValueError(f"unknown quadrature kind {kind!r}")
    vand = legendre_vandermonde(rule)
    return Operator1D(
        rule=rule,
        diff=lagrange_diff_matrix(rule),
        vandermonde=vand,
        projection=projection_operator(rule, vand),
        weights_diag=rule.weights.copy(),
    )


def tensor_product_weights(weights, d):
    """Tensor-product quadrature weights on the d-cube, direction 0 fastest."""
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    out = np.ones(1)
    for _ in range(d):
        out = np.kron(weights, out)
    return out


def kronecker_apply(factors, vec):
    """Apply a Kronecker product of d factors to a flat vector.

    factors[j] acts along direction j of the x-fastest layout: a 2D
    array is a dense factor, a 1D array the diagonal of a diagonal
    factor.  The apply is sum-factorized, one direction at a time, so a
    d-cube of n-point directions with square dense factors costs exactly
    d * n**(d+1) scalar multiplications (each tallied in the global
    multiplication counter).
    """
    if len(factors) == 0:
        raise ValueError("kronecker_apply needs at least one factor")
    factors = [np.asarray(f, dtype=float) for f in factors]
    in_extents = []
    for f in factors:
        if f.ndim == 2:
            in_extents.append(f.shape[1])
        elif f.ndim == 1:
            in_extents.append(f.shape[0])
        else:
            raise ValueError(f"factors must be 1D or 2D, got ndim={f.ndim}")
    vec = np.asarray(vec, dtype=float)
    size = int(np.prod(in_extents))
    if vec.ndim != 1 or vec.shape[0] != size:
        raise ValueError(
            f"vector length {vec.shape} does not match factor columns "
            f"(expected {size})"
        )
    d = len(factors)
    # axis d-1-j of the reversed-extent tensor is direction j
    tensor = vec.reshape(tuple(reversed(in_extents)))
    for j, f in enumerate(factors):
        axis = d - 1 - j
        if f.ndim == 1:
            shape = [1] * d
            shape[axis] = f.shape[0]
            tensor = tensor * f.reshape(shape)
            counting.add_multiplications(tensor.size)
        else:
            rest = tensor.size // f.shape[1]
            tensor = np.moveaxis(
                np.tensordot(f, tensor, axes=([1], [axis])), 0, axis
            )
            counting.add_multiplications(f.shape[0] * f.shape[1] * rest)
    return tensor.reshape(-1)
