"""Ensemble parameters and the polynomial recursion for the smallest-eigenvalue density.

The density of the smallest eigenvalue of the beta-Wishart-Laguerre ensemble
(joint eigenvalue weight |Delta|^beta * prod lambda^alpha e^{-beta lambda/2})
has the closed form

    f(x) = c * exp(-beta*n*x/2) * x^alpha * g(x)

where g is a polynomial of degree alpha*(n-1).  This module computes g by a
lifting recursion in alpha, together with the normalization constants.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import gmpy2

from .fields import (
    DEFAULT_PRECISION_BITS,
    precision_bits,
    is_exact_scalar,
    to_mpfr,
    to_float,
)
from .polynomials import DensePolynomial, constant, combine_recursion_step


class UnsupportedParameterError(ValueError):
    """Parameter combination outside the implemented domain."""


class InternalConsistencyError(ArithmeticError):
    """Two independent routes to the same quantity disagree."""


@dataclass(frozen=True)
class EnsembleParams:
    """Parameters (n, alpha, beta) of a beta-Wishart-Laguerre ensemble.

    ``beta`` may be an int/Fraction (exact mode) or an mpfr/float (float
    mode).  ``precision`` forces float mode at the given mantissa bits even
    for rational beta, which is how very high-degree cases are run.
    """

    n: int
    alpha: int
    beta: object
    precision: int | None = None

    def __post_init__(self):
        if self.n < 1:
            raise UnsupportedParameterError("n must be a positive integer")
        if not isinstance(self.alpha, int) or self.alpha < 0:
            raise UnsupportedParameterError(
                "alpha must be a non-negative integer (half-integer seeds are unsupported)"
            )
        if self.beta <= 0:
            raise UnsupportedParameterError("beta must be positive")

    @property
    def exact(self):
        return self.precision is None and is_exact_scalar(self.beta)

    @property
    def bits(self):
        return self.precision if self.precision is not None else DEFAULT_PRECISION_BITS

    def beta_scalar(self):
        """beta in the working field: Fraction in exact mode, mpfr otherwise."""
        if self.exact:
            return Fraction(self.beta)
        return to_mpfr(self.beta, self.bits)

    def gamma(self):
        """Total weight exponent n*(alpha + beta*(n-1)/2 + 1); rational iff beta is."""
        b = self.beta_scalar()
        if self.exact:
            return self.n * (self.alpha + b * (self.n - 1) / 2 + 1)
        with precision_bits(self.bits):
            return self.n * (self.alpha + b * (self.n - 1) / 2 + 1)

    def m_equivalent(self):
        """The long data-matrix dimension implied by alpha: m = n - 1 + 2(alpha+1)/beta."""
        b = self.beta_scalar()
        if self.exact:
            return self.n - 1 + Fraction(2 * (self.alpha + 1), 1) / b
        with precision_bits(self.bits):
            return self.n - 1 + 2 * (self.alpha + 1) / b


@dataclass(frozen=True)
class GPolynomial:
    """The polynomial factor g of the smallest-eigenvalue density."""

    params: EnsembleParams
    poly: DensePolynomial = field(compare=False)

    def __call__(self, x):
        return self.poly(x)


def compute_g(params: EnsembleParams) -> GPolynomial:
    """Build g for (n, alpha, beta) by lifting the alpha=0 seed g=1.

    Each lift from exponent a-1 to a runs the inner sweep
        S_i = (x + 2a/beta + n - i + 1) S_{i-1}
              - (2x/(beta(n-i))) S_{i-1}' + x (i-1)(1 + 2a/(beta(n-i))) S_{i-2}
    for i = 1..n-1 and takes S_{n-1}.  The coefficients use the *target*
    exponent a of the current lift.
    """
    if params.exact:
        return GPolynomial(params, _compute_g_poly(params.n, params.alpha, params.beta_scalar()))
    with precision_bits(params.bits):
        beta = params.beta_scalar()
        return GPolynomial(params, _compute_g_poly(params.n, params.alpha, beta))


def _compute_g_poly(n, alpha, beta):
    one = beta / beta if not isinstance(beta, Fraction) else Fraction(1)
    g = constant(one)
    if n == 1:
        return g  # no repulsion partners: g stays 1 for every alpha
    for a in range(1, alpha + 1):
        s_prev, s = None, g
        two_a_over_beta = 2 * a / beta if not isinstance(beta, Fraction) else Fraction(2 * a) / beta
        for i in range(1, n):
            shift = two_a_over_beta + (n - i + 1)
            damp = 2 / (beta * (n - i)) if not isinstance(beta, Fraction) else Fraction(2) / (beta * (n - i))
            cross = (i - 1) * (one + two_a_over_beta / (n - i))
            s_new = combine_recursion_step(s, s_prev if s_prev is not None else DensePolynomial(), shift, damp, cross)
            s_prev, s = s, s_new
        g = s
    return g


def selberg_constant_C(params: EnsembleParams):
    """Normalization of the joint eigenvalue density, via Selberg's integral.

    C = (beta/2)^gamma * prod_{j=0}^{n-1} Gamma(beta/2+1)
        / [Gamma(beta(j+1)/2+1) * Gamma(beta*j/2+alpha+1)].
    Evaluated in float (the Gamma arguments are generally non-integer).
    """
    with precision_bits(params.bits):
        b = to_mpfr(params.beta_scalar())
        gam = to_mpfr(params.gamma())
        out = (b / 2) ** gam
        for j in range(params.n):
            out *= gmpy2.gamma(b / 2 + 1) / (
                gmpy2.gamma(b * (j + 1) / 2 + 1) * gmpy2.gamma(b * j / 2 + params.alpha + 1)
            )
        return out


def _c_gamma_product(params: EnsembleParams):
    """c via the Gamma-product closed form (float)."""
    with precision_bits(params.bits):
        n, alpha = params.n, params.alpha
        b = to_mpfr(params.beta_scalar())
        out = (
            n
            * (b / 2) ** (n * alpha + 1)
            * gmpy2.gamma(b / 2 + 1)
            / (gmpy2.gamma(b * n / 2 + 1) * gmpy2.gamma(b * (n - 1) / 2 + alpha + 1))
        )
        for j in range(n - 1):
            out *= gmpy2.gamma(b * j / 2 + b + 1) / gmpy2.gamma(b * j / 2 + alpha + 1)
        return out


def _c_from_normalization(params: EnsembleParams, g: GPolynomial):
    """c as the reciprocal of int_0^infty e^{-beta n x/2} x^alpha g(x) dx.

    The integral is a finite Gamma sum, exact-rational when beta is:
    sum_j g_j * (alpha+j)! * (2/(beta n))^{alpha+j+1}.
    """
    n, alpha = params.n, params.alpha
    if params.exact:
        rate = Fraction(2) / (params.beta_scalar() * n)
        total = Fraction(0)
        fact = 1
        for k in range(1, alpha + 1):
            fact *= k
        power = rate ** (alpha + 1)
        for j, gj in enumerate(g.poly.coeffs):
            total += gj * fact * power
            fact *= alpha + j + 1
            power *= rate
        return 1 / total
    with precision_bits(params.bits):
        rate = 2 / (to_mpfr(params.beta_scalar()) * n)
        total = to_mpfr(0)
        fact = to_mpfr(1)
        for k in range(1, alpha + 1):
            fact *= k
        power = rate ** (alpha + 1)
        for j, gj in enumerate(g.poly.coeffs):
            total += to_mpfr(gj) * fact * power
            fact *= alpha + j + 1
            power *= rate
        return 1 / total


def norm_constant_c(params: EnsembleParams, g: GPolynomial, rel_tol=1e-10):
    """Density normalization c, computed by two independent routes.

    Returns the reciprocal-integral value (exact when beta is rational); the
    Gamma-product closed form is kept as a cross-check and a disagreement
    beyond ``rel_tol`` raises InternalConsistencyError.
    """
    via_integral = _c_from_normalization(params, g)
    via_gamma = _c_gamma_product(params)
    a, b = to_float(via_integral), to_float(via_gamma)
    if abs(a - b) > rel_tol * max(abs(a), abs(b)):
        raise InternalConsistencyError(
            f"normalization routes disagree: integral={a!r} gamma-product={b!r}"
        )
    return via_integral
