"""Matrix-argument confluent hypergeometric values via the density recursion.

The function 1F1^(beta/2)(-n+1; 2*alpha/beta+2; -x*I_alpha) is a polynomial
of degree alpha*(n-1) in x, equal to g(x) scaled by a Gamma-ratio prefactor.
For integer alpha the prefactor telescopes into rising factorials, so it is
exact-rational whenever beta is.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2

from .fields import precision_bits, to_mpfr
from .polynomials import DensePolynomial
from .ensemble import EnsembleParams, compute_g


@dataclass(frozen=True)
class HypergeomResult:
    params: EnsembleParams
    poly: DensePolynomial = field(compare=False)
    prefactor: object = None

    def __call__(self, x):
        return self.poly(x)


def _prefactor(params: EnsembleParams):
    """(beta/2)^(alpha(n-1)) * prod_{j=0}^{n-2} Gamma(beta j/2 + beta + 1)/Gamma(beta j/2 + alpha + beta + 1).

    Each Gamma ratio is 1 / [(beta j/2 + beta + 1) ... (beta j/2 + beta + alpha)],
    a reciprocal rising factorial of length alpha.
    """
    n, alpha = params.n, params.alpha
    if params.exact:
        b = params.beta_scalar()
        out = (b / 2) ** (alpha * (n - 1))
        for j in range(n - 1):
            base = b * j / 2 + b
            for t in range(1, alpha + 1):
                out /= base + t
        return out
    with precision_bits(params.bits):
        b = to_mpfr(params.beta_scalar())
        out = (b / 2) ** (alpha * (n - 1))
        for j in range(n - 1):
            out *= gmpy2.gamma(b * j / 2 + b + 1) / gmpy2.gamma(b * j / 2 + params.alpha + b + 1)
        return out


def hyp1f1_matrix(params: EnsembleParams) -> HypergeomResult:
    """Evaluate the 1F1 polynomial: prefactor times the recursion polynomial g.

    The result is normalized to 1 at x = 0.
    """
    g = compute_g(params)
    pref = _prefactor(params)
    if params.exact:
        poly = g.poly.scale(pref)
    else:
        with precision_bits(params.bits):
            poly = DensePolynomial([to_mpfr(c) * pref for c in g.poly.coeffs])
    return HypergeomResult(params, poly, pref)


def kummer_1f1_polynomial(n, c_param):
    """Classical scalar Kummer polynomial 1F1(-n+1; c; -x), exact coefficients.

    Used as the alpha = 1 cross-check: sum_{k=0}^{n-1} [(-n+1)_k/(c)_k] (-x)^k / k!.
    """
    coeffs = []
    term = Fraction(1)
    for k in range(n):
        coeffs.append(term)
        # next term: multiply by (-n+1+k)/((c+k)(k+1)) * (-1)
        term = term * Fraction(-(-n + 1 + k), 1) / (Fraction(c_param) + k) / (k + 1)
    return DensePolynomial(coeffs)
