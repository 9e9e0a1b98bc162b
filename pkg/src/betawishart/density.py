"""Closed-form smallest-eigenvalue densities, CDFs, moments, and the delay-time transform.

The unrestricted-trace density is the damped polynomial

    f(x) = exp(-beta*n*x/2) * sum_{j=alpha}^{n*alpha} kappa_j x^j,

and the fixed-trace (trace == 1) variant follows from it by an inverse
Laplace transform, supported on [0, 1/n].
"""

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
import numpy as np
from scipy.special import betainc

from .fields import precision_bits, to_mpfr, to_float, format_scalar
from .ensemble import (
    EnsembleParams,
    GPolynomial,
    UnsupportedParameterError,
    compute_g,
    norm_constant_c,
)


class DomainError(ValueError):
    """Evaluation point outside the density's domain."""


class DivergentMomentError(ValueError):
    """Requested moment order does not converge."""


def _exp(x, exact_mode):
    if exact_mode:
        return math.exp(x)
    return gmpy2.exp(x)


@dataclass(frozen=True)
class ClosedFormDensity:
    """Exact density of the smallest eigenvalue (unrestricted trace).

    ``kappa[k]`` is the coefficient of x^(alpha+k); coefficients are
    Fractions in exact mode and mpfr in float mode.
    """

    params: EnsembleParams
    kappa: tuple

    @property
    def alpha(self):
        return self.params.alpha

    def rate(self):
        """The exponential damping rate beta*n/2."""
        p = self.params
        if p.exact:
            return Fraction(p.beta_scalar() * p.n, 2)
        with precision_bits(p.bits):
            return p.beta_scalar() * p.n / 2

    def kappa_map(self):
        """Map j -> kappa_j over the support j = alpha..n*alpha."""
        return {self.alpha + k: v for k, v in enumerate(self.kappa)}

    def poly_part(self, x):
        """sum_j kappa_j x^j, exact for rational x in exact mode."""
        acc = 0
        for c in reversed(self.kappa):
            acc = acc * x + c
        return acc * x**self.alpha if self.alpha else acc

    def pdf(self, x):
        """Density value(s); accepts a scalar or an array."""
        if np.ndim(x) > 0:
            xs = np.asarray(x, dtype=float)
            if np.any(xs < 0):
                raise DomainError("density is supported on x >= 0")
            out = self._pdf_float64(xs)
            if np.all(np.isfinite(out)):
                return out
            return np.array([self._pdf_scalar(v) for v in xs])
        if x < 0:
            raise DomainError("density is supported on x >= 0")
        return self._pdf_scalar(x)

    def _pdf_float64(self, xs):
        coeffs = np.array([to_float(c) for c in self.kappa])
        acc = np.zeros_like(xs)
        for c in coeffs[::-1]:
            acc = acc * xs + c
        with np.errstate(over="ignore", invalid="ignore", under="ignore"):
            return acc * xs**self.alpha * np.exp(-to_float(self.rate()) * xs)

    def _pdf_scalar(self, x):
        bits = max(self.params.bits, 128)
        with precision_bits(bits):
            xm = to_mpfr(x)
            acc = to_mpfr(0)
            for c in reversed(self.kappa):
                acc = acc * xm + to_mpfr(c)
            val = acc * xm**self.alpha * gmpy2.exp(-to_mpfr(self.rate()) * xm)
            return float(val)

    def log_pdf(self, x):
        """log f(x), computed in big-float to stay finite at extreme arguments."""
        if x < 0:
            raise DomainError("density is supported on x >= 0")
        bits = max(self.params.bits, 128)
        with precision_bits(bits):
            xm = to_mpfr(x)
            acc = to_mpfr(0)
            for c in reversed(self.kappa):
                acc = acc * xm + to_mpfr(c)
            if acc <= 0:
                return float("-inf")
            out = gmpy2.log(acc) - to_mpfr(self.rate()) * xm
            if self.alpha:
                if xm == 0:
                    return float("-inf")
                out += self.alpha * gmpy2.log(xm)
            return float(out)

    def survival_poly(self):
        """Coefficients q_k with 1 - F(x) = exp(-r x) * sum_k q_k x^k.

        Follows from int_x^inf t^j e^{-rt} dt = e^{-rx} (j!/r^{j+1})
        sum_{k<=j} (rx)^k/k!, a finite sum, so no special functions are
        needed; exact in rational mode.
        """
        r = self.rate()
        kap = self.kappa_map()
        jmax = self.alpha + len(self.kappa) - 1
        # tail[k] = sum_{j>=k} kappa_j j!/r^{j+1}
        weights = {}
        fact = 1
        rp = r ** (-1)
        for j in range(jmax + 1):
            if j > 0:
                fact *= j
            rp = rp if j == 0 else rp / r
            weights[j] = kap.get(j, 0) * fact * rp
        tails = [0] * (jmax + 2)
        for k in range(jmax, -1, -1):
            tails[k] = tails[k + 1] + weights[k]
        out = []
        rk = 1
        fact = 1
        for k in range(jmax + 1):
            if k > 0:
                rk *= r
                fact *= k
            out.append(rk / fact * tails[k])
        return out

    def cdf(self, x):
        """F(x); accepts a scalar or an array.  Stable: the survival polynomial
        has non-negative coefficients whenever the kappa do."""
        q = [to_float(v) for v in self.survival_poly()]
        r = to_float(self.rate())
        xs = np.asarray(x, dtype=float)
        if np.any(xs < 0):
            raise DomainError("density is supported on x >= 0")
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            acc = np.zeros_like(xs)
            for c in reversed(q):
                acc = acc * xs + c
            out = 1.0 - acc * np.exp(-r * xs)
        # Q(x)*exp(-rx) <= 1 everywhere, so an overflow in the Horner pass can
        # only happen where the survival probability has underflowed to 0.
        out = np.where(np.isfinite(out), out, 1.0)
        out = np.clip(out, 0.0, 1.0)
        return out if np.ndim(x) > 0 else float(out)

    def to_json_dict(self):
        p = self.params
        d = {
            "n": p.n,
            "alpha": p.alpha,
            "beta": format_scalar(p.beta) if p.exact else to_float(p.beta_scalar()),
            "gamma": format_scalar(p.gamma()) if p.exact else to_float(p.gamma()),
            "kappa": [],
        }
        for j, v in sorted(self.kappa_map().items()):
            if isinstance(v, Fraction):
                d["kappa"].append({"j": j, "num": str(v.numerator), "den": str(v.denominator)})
            else:
                d["kappa"].append({"j": j, "value": to_float(v)})
        return d

    def to_json(self):
        return json.dumps(self.to_json_dict())


@dataclass(frozen=True)
class FixedTraceDensity:
    """Smallest-eigenvalue density of the trace-normalized ensemble, on [0, 1/n].

    Reuses the kappa of the unrestricted density; evaluation weights carry
    the falling-factorial ratio Gamma(gamma)/Gamma(gamma-j-1).
    """

    params: EnsembleParams
    kappa: tuple

    @property
    def alpha(self):
        return self.params.alpha

    def kappa_map(self):
        return {self.alpha + k: v for k, v in enumerate(self.kappa)}

    def _weights(self):
        """w_j = kappa_j (2/beta)^{j+1} Gamma(gamma)/Gamma(gamma-j-1), exact when beta rational."""
        p = self.params
        gam = p.gamma()
        if p.exact:
            two_over_beta = Fraction(2) / p.beta_scalar()
            out = {}
            for j, kj in self.kappa_map().items():
                ratio = Fraction(1)
                for t in range(1, j + 2):  # gamma-1 down to gamma-j-1
                    ratio *= gam - t
                out[j] = kj * two_over_beta ** (j + 1) * ratio
            return out
        with precision_bits(p.bits):
            two_over_beta = 2 / to_mpfr(p.beta_scalar())
            gam = to_mpfr(gam)
            out = {}
            for j, kj in self.kappa_map().items():
                ratio = to_mpfr(1)
                for t in range(1, j + 2):
                    ratio *= gam - t
                out[j] = to_mpfr(kj) * two_over_beta ** (j + 1) * ratio
            return out

    def pdf(self, x):
        """Density value(s): f_F(x) = sum_j w_j x^j (1-nx)^(gamma-j-2) on [0, 1/n).

        Exactly 0 at and beyond x = 1/n.  The fractional tail power is taken
        once via exp((gamma-n*alpha-2)*log1p(-nx)) to avoid cancellation near
        the support edge; the remaining integer powers of (1-nx) are exact.
        """
        p = self.params
        n = p.n
        gam = to_float(p.gamma())
        nalpha = self.alpha + len(self.kappa) - 1
        tail_pow = gam - nalpha - 2
        w = self._weights()
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        if np.any(xs < 0):
            raise DomainError("density is supported on x >= 0")
        u = 1.0 - n * xs
        inside = u > 0
        out = np.zeros_like(xs)
        if np.any(inside):
            xi, ui = xs[inside], u[inside]
            acc = np.zeros_like(xi)
            for j in range(self.alpha, nalpha + 1):
                acc = acc + to_float(w.get(j, 0)) * xi**j * ui ** (nalpha - j)
            out[inside] = acc * np.exp(tail_pow * np.log1p(-n * xi))
        return out if np.ndim(x) > 0 else float(out[0])

    def polynomial_factor(self):
        """Split off the fractional tail power: f_F(x) = (1-nx)^t * sum_k c_k x^k.

        t = gamma - n*alpha - 2; the c_k come from expanding the integer
        powers (1-nx)^(n*alpha - j) and are exact when beta is rational.
        """
        p = self.params
        n = p.n
        nalpha = self.alpha + len(self.kappa) - 1
        w = self._weights()
        if p.exact:
            coeffs = [Fraction(0)] * (nalpha + 1)
            for j, wj in w.items():
                m = nalpha - j
                for i in range(m + 1):
                    coeffs[j + i] += wj * math.comb(m, i) * Fraction(-n) ** i
            tail = p.gamma() - nalpha - 2
            return tail, coeffs
        with precision_bits(p.bits):
            coeffs = [to_mpfr(0)] * (nalpha + 1)
            for j, wj in w.items():
                m = nalpha - j
                for i in range(m + 1):
                    coeffs[j + i] += wj * math.comb(m, i) * to_mpfr(-n) ** i
            tail = to_mpfr(p.gamma()) - nalpha - 2
            return tail, coeffs

    def cdf(self, x):
        """F_F(x) = sum_j kappa_j j! (2/(beta n))^{j+1} I_{nx}(j+1, gamma-j-1).

        The incomplete-Beta form integrates each term of the density in
        closed form; at x = 1/n it collapses to the normalization sum = 1.
        """
        p = self.params
        n = p.n
        gam = to_float(p.gamma())
        xs = np.asarray(x, dtype=float)
        if np.any(xs < 0):
            raise DomainError("density is supported on x >= 0")
        z = np.clip(n * xs, 0.0, 1.0)
        rate = 2.0 / (to_float(p.beta_scalar()) * n)
        out = np.zeros_like(z)
        fact = 1.0
        for j, kj in sorted(self.kappa_map().items()):
            bpar = gam - j - 1
            if bpar <= 0:
                continue
            out = out + to_float(kj) * math.gamma(j + 1) * rate ** (j + 1) * betainc(j + 1, bpar, z)
        out = np.clip(out, 0.0, 1.0)
        return out if np.ndim(x) > 0 else float(out)

    def to_json_dict(self):
        d = ClosedFormDensity(self.params, self.kappa).to_json_dict()
        d["fixed_trace"] = True
        return d

    def to_json(self):
        return json.dumps(self.to_json_dict())


def build_density(params: EnsembleParams, g: GPolynomial | None = None) -> ClosedFormDensity:
    """Assemble kappa_j = c * g_{j-alpha} from the recursion output."""
    if g is None:
        g = compute_g(params)
    c = norm_constant_c(params, g)
    if params.exact:
        kappa = tuple(c * gk for gk in g.poly.coeffs)
    else:
        with precision_bits(params.bits):
            kappa = tuple(to_mpfr(c) * to_mpfr(gk) for gk in g.poly.coeffs)
    return ClosedFormDensity(params, kappa)


def build_fixed_trace(params: EnsembleParams, g: GPolynomial | None = None) -> FixedTraceDensity:
    """Fixed-trace density from the same kappa coefficients.

    Requires gamma - n*alpha - 1 > 0 so every Gamma(gamma-j-1) in the
    closed form is finite; in exact mode gamma must additionally be rational.
    """
    gam = to_float(params.gamma())
    nalpha = params.n * params.alpha
    if gam - nalpha - 1 <= 0:
        raise UnsupportedParameterError(
            f"fixed-trace form needs gamma - n*alpha - 1 > 0 (gamma={gam}, n*alpha={nalpha})"
        )
    base = build_density(params, g)
    return FixedTraceDensity(params, base.kappa)


def moment_unrestricted(d: ClosedFormDensity, eta):
    """<x^eta> = sum_j kappa_j (2/(beta n))^{j+eta+1} Gamma(j+eta+1).

    Exact rational for non-negative integer eta in exact mode; big-float
    otherwise.  Requires eta > -alpha-1.
    """
    p = d.params
    if to_float(eta) <= -(p.alpha + 1):
        raise DivergentMomentError(f"moment of order {eta} diverges (needs eta > {-(p.alpha+1)})")
    integer_eta = isinstance(eta, int) or (isinstance(eta, Fraction) and eta.denominator == 1)
    if p.exact and integer_eta and eta >= 0:
        rate = Fraction(2) / (p.beta_scalar() * p.n)
        total = Fraction(0)
        for j, kj in d.kappa_map().items():
            total += kj * rate ** (j + eta + 1) * math.factorial(j + int(eta))
        return total
    with precision_bits(p.bits):
        rate = 2 / (to_mpfr(p.beta_scalar()) * p.n)
        em = to_mpfr(eta)
        total = to_mpfr(0)
        for j, kj in d.kappa_map().items():
            total += to_mpfr(kj) * rate ** (j + em + 1) * gmpy2.gamma(j + em + 1)
        return total


def moment_fixed_trace(d: FixedTraceDensity, eta):
    """<x^eta>_F = [Gamma(gamma)/Gamma(gamma+eta)] sum_j kappa_j (2/beta)^{j+1} Gamma(j+eta+1)/n^{j+eta+1}."""
    p = d.params
    if to_float(eta) <= -(p.alpha + 1):
        raise DivergentMomentError(f"moment of order {eta} diverges (needs eta > {-(p.alpha+1)})")
    integer_eta = isinstance(eta, int) or (isinstance(eta, Fraction) and eta.denominator == 1)
    gam = p.gamma()
    if p.exact and integer_eta and eta >= 0:
        eta = int(eta)
        ratio = Fraction(1)
        for t in range(eta):  # 1/[(gamma)(gamma+1)...(gamma+eta-1)]
            ratio /= gam + t
        rate = Fraction(2) / p.beta_scalar()
        total = Fraction(0)
        for j, kj in d.kappa_map().items():
            total += kj * rate ** (j + 1) * Fraction(math.factorial(j + eta), p.n ** (j + eta + 1))
        return ratio * total
    with precision_bits(p.bits):
        gam = to_mpfr(gam)
        em = to_mpfr(eta)
        ratio = gmpy2.gamma(gam) / gmpy2.gamma(gam + em)
        rate = 2 / to_mpfr(p.beta_scalar())
        total = to_mpfr(0)
        for j, kj in d.kappa_map().items():
            total += to_mpfr(kj) * rate ** (j + 1) * gmpy2.gamma(j + em + 1) / to_mpfr(p.n) ** (j + em + 1)
        return ratio * total


@dataclass(frozen=True)
class DelayTimeDensity:
    """Density of the largest proper delay time: x -> (tauH/x^2) f(tauH/x)."""

    base: ClosedFormDensity
    tau_h: float

    def pdf(self, x):
        xs = np.asarray(x, dtype=float)
        if np.any(xs <= 0):
            raise DomainError("delay times are positive")
        val = self.base.pdf(self.tau_h / xs) * self.tau_h / xs**2
        return val if np.ndim(x) > 0 else float(val)

    def cdf(self, x):
        xs = np.asarray(x, dtype=float)
        if np.any(xs <= 0):
            raise DomainError("delay times are positive")
        out = 1.0 - self.base.cdf(self.tau_h / xs)
        return out if np.ndim(x) > 0 else float(out)


def delay_time_density(n, beta, tau_h, precision=None) -> DelayTimeDensity:
    """Largest-delay-time density; the underlying ensemble has alpha = beta*n/2.

    beta*n/2 must be a non-negative integer (the recursion seed constraint);
    tau_h is the Heisenberg time setting the scale.
    """
    if tau_h <= 0:
        raise UnsupportedParameterError("tau_h must be positive")
    alpha2 = Fraction(beta) * n if isinstance(beta, (int, Fraction)) else float(beta) * n
    if isinstance(alpha2, Fraction):
        if alpha2.denominator != 2 and alpha2.denominator != 1:
            raise UnsupportedParameterError("beta*n/2 must be a non-negative integer")
        if (alpha2 / 2).denominator != 1:
            raise UnsupportedParameterError("beta*n/2 must be a non-negative integer")
        alpha = int(alpha2 / 2)
    else:
        alpha = int(round(alpha2 / 2))
        if abs(alpha2 / 2 - alpha) > 1e-12:
            raise UnsupportedParameterError("beta*n/2 must be a non-negative integer")
    params = EnsembleParams(n, alpha, beta, precision=precision)
    return DelayTimeDensity(build_density(params), float(tau_h))
