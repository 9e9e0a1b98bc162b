"""Independent brute-force routes to the same quantities as the recursion.

Two backends:

* tensor-product generalized Gauss-Laguerre quadrature over the (n-1)
  eigenvalue integrals (exact, up to rounding, for even integer beta where
  the integrand is polynomial times the weight);
* exact multivariate expansion of the Vandermonde power (even integer beta
  only), which reduces mixed eigenvalue moments to rational Gamma sums.

Plus the partition-sum formula that rebuilds a single density coefficient
kappa_r from mixed moments, used to cross-check the recursion output.
"""

import itertools
import math
from fractions import Fraction

import numpy as np
from scipy.special import roots_genlaguerre

from .ensemble import EnsembleParams, UnsupportedParameterError
from .fields import to_float

_MAX_QUAD_DIM = 4  # n <= 5


def default_node_count(params: EnsembleParams):
    b = to_float(params.beta_scalar())
    n, alpha = params.n, params.alpha
    return math.ceil((alpha * (n - 1) + b * (n - 1) + n * b) / 2) + 10


def _grid(params: EnsembleParams, nodes):
    """Quadrature grid for the (n-1)-dim eigenvalue measure, as flat arrays.

    Returns (lams, w) where lams has shape (npoints, n-1) holding the
    original-scale eigenvalues 2t/beta and w the combined weight including
    |Delta(t)|^beta (constant prefactors cancel in all the ratios we form).
    """
    m = params.n - 1
    if m > _MAX_QUAD_DIM:
        raise UnsupportedParameterError(f"quadrature oracle supports n <= {_MAX_QUAD_DIM + 1}")
    b = to_float(params.beta_scalar())
    t, w = roots_genlaguerre(nodes, b)
    grids = np.meshgrid(*([t] * m), indexing="ij")
    ts = np.stack([g.ravel() for g in grids], axis=1)
    ws = np.prod(np.stack(np.meshgrid(*([w] * m), indexing="ij"), axis=0), axis=0).ravel()
    for i, j in itertools.combinations(range(m), 2):
        ws = ws * np.abs(ts[:, i] - ts[:, j]) ** b
    return 2.0 * ts / b, ws


def quadrature_g(params: EnsembleParams, x, nodes=None):
    """Evaluate g(x) as the normalized expectation of prod_j (lambda_j + x)^alpha."""
    if params.n == 1:
        return 1.0
    if nodes is None:
        nodes = default_node_count(params)
    lams, w = _grid(params, nodes)
    num = np.sum(w * np.prod((lams + float(x)) ** params.alpha, axis=1))
    den = np.sum(w)
    return num / den


def mixed_moment(params: EnsembleParams, exponents, nodes=None):
    """<prod_j lambda_j^{a_j}> over the (n-1)-dim repulsive eigenvalue measure.

    Tensor Gauss-Laguerre; exact up to rounding for even integer beta.
    """
    m = params.n - 1
    exponents = list(exponents)
    if len(exponents) != m:
        raise ValueError(f"need {m} exponents, got {len(exponents)}")
    if nodes is None:
        nodes = default_node_count(params) + max(exponents, default=0)
    lams, w = _grid(params, nodes)
    num = np.sum(w * np.prod(lams ** np.asarray(exponents, dtype=float), axis=1))
    return num / np.sum(w)


# ---------------------------------------------------------------------------
# exact backend (even integer beta)


def _vandermonde_power(m, beta):
    """Expand Delta_m^beta as {exponent tuple: int coeff}; beta even integer."""
    poly = {tuple([0] * m): 1}
    for _ in range(beta):
        for i, j in itertools.combinations(range(m), 2):
            # multiply by (lambda_j - lambda_i)
            new = {}
            for expo, coeff in poly.items():
                up_j = list(expo)
                up_j[j] += 1
                key = tuple(up_j)
                new[key] = new.get(key, 0) + coeff
                up_i = list(expo)
                up_i[i] += 1
                key = tuple(up_i)
                new[key] = new.get(key, 0) - coeff
            poly = new
    return poly


def mixed_moment_exact(params: EnsembleParams, exponents):
    """Exact-rational mixed moment; requires even integer beta and exact params."""
    if not params.exact:
        raise UnsupportedParameterError("exact mixed moments need exact-mode parameters")
    beta = params.beta_scalar()
    if beta.denominator != 1 or beta.numerator % 2 != 0:
        raise UnsupportedParameterError("exact mixed moments need even integer beta")
    beta = int(beta)
    m = params.n - 1
    exponents = list(exponents)
    if len(exponents) != m:
        raise ValueError(f"need {m} exponents, got {len(exponents)}")
    vdm = _vandermonde_power(m, beta)
    scale = Fraction(2, beta)

    def weight_integral(k):
        # int_0^inf lambda^(k+beta) e^{-beta lambda/2} dlambda
        return math.factorial(k + beta) * scale ** (k + beta + 1)

    num = Fraction(0)
    den = Fraction(0)
    for expo, coeff in vdm.items():
        base = Fraction(coeff)
        term_num = base
        term_den = base
        for e, a in zip(expo, exponents):
            term_num *= weight_integral(e + a)
            term_den *= weight_integral(e)
        num += term_num
        den += term_den
    return num / den


# ---------------------------------------------------------------------------
# partition formula for the density coefficients


def enumerate_partitions(total, parts, max_value):
    """All multisets of `parts` integers in [0, max_value] summing to `total`.

    Each partition is returned as a list of (value, multiplicity) pairs with
    values descending.
    """
    out = []
    if total < 0 or total > parts * max_value:
        return out

    def rec(remaining, slots, cap, acc):
        if slots == 0:
            if remaining == 0:
                out.append(list(acc))
            return
        for v in range(min(cap, remaining), -1, -1):
            if remaining - v > (slots - 1) * v:
                break  # values are non-increasing: rest cannot absorb the remainder
            count = 1
            # take v exactly `count` times handled by recursion granularity of 1
            acc.append(v)
            rec(remaining - v, slots - 1, v, acc)
            acc.pop()

    rec(total, parts, max_value, [])
    # collapse ordered non-increasing tuples to (value, multiplicity) pairs
    collapsed = []
    for p in out:
        pairs = [(v, len(list(g))) for v, g in itertools.groupby(p)]
        collapsed.append(pairs)
    return collapsed


def _exact_norm_constant(params: EnsembleParams):
    """c via the Gamma-product form with all-integer arguments (even integer beta).

    Independent of the recursion: no g polynomial involved.
    """
    beta = params.beta_scalar()
    if not params.exact or beta.denominator != 1 or int(beta) % 2 != 0:
        raise UnsupportedParameterError("exact normalization needs even integer beta")
    b = int(beta)
    n, alpha = params.n, params.alpha

    def gam(k):  # Gamma(k) for positive integer k
        return math.factorial(int(k) - 1)

    out = Fraction(n) * Fraction(b, 2) ** (n * alpha + 1) * gam(b // 2 + 1) / (
        gam(b * n // 2 + 1) * gam(b * (n - 1) // 2 + alpha + 1)
    )
    for j in range(n - 1):
        out *= Fraction(gam(b * j // 2 + b + 1), gam(b * j // 2 + alpha + 1))
    return out


def kappa_via_partitions(params: EnsembleParams, r, nodes=None):
    """Rebuild kappa_r from the partition/mixed-moment formula.

    kappa_r = (n-1)! * c * sum over partitions {p_k^(s_k)} of r-alpha into
    n-1 parts <= alpha of  prod_k binom(alpha, p_k)^{s_k}/s_k!  times the
    mixed moment with exponents alpha - p.  Exact rational for even integer
    beta; float (quadrature moments) otherwise.
    """
    n, alpha = params.n, params.alpha
    if not (alpha <= r <= n * alpha):
        raise ValueError(f"r must lie in [alpha, n*alpha] = [{alpha}, {n * alpha}]")
    beta = params.beta_scalar()
    exact = (
        params.exact
        and isinstance(beta, Fraction)
        and beta.denominator == 1
        and int(beta) % 2 == 0
    )
    c = _exact_norm_constant(params) if exact else None
    if c is None:
        from .ensemble import compute_g, norm_constant_c

        c = to_float(norm_constant_c(params, compute_g(params)))
    total = Fraction(0) if exact else 0.0
    for pairs in enumerate_partitions(r - alpha, n - 1, alpha):
        combi = Fraction(1) if exact else 1.0
        expo = []
        for value, mult in pairs:
            combi *= Fraction(math.comb(alpha, value)) ** mult / math.factorial(mult)
            expo.extend([alpha - value] * mult)
        if exact:
            mom = mixed_moment_exact(params, expo)
        else:
            combi = float(combi)
            mom = mixed_moment(params, expo, nodes=nodes)
        total += combi * mom
    return math.factorial(n - 1) * c * total
