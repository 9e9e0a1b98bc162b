"""Closed-form smallest-eigenvalue densities, exactly.

Builds the density f(x) = c * exp(-beta*n*x/2) * x^alpha * g(x) for a few
parameter sets, prints the exact rational coefficients, and checks the
normalization and the first moments against numerical integration.
"""

from fractions import Fraction

import numpy as np

from betawishart import (
    EnsembleParams,
    build_density,
    build_fixed_trace,
    moment_unrestricted,
    moment_fixed_trace,
)
from betawishart.fields import format_scalar, to_float

# --- an even-beta case: everything is a fraction --------------------------

params = EnsembleParams(n=5, alpha=2, beta=Fraction(2))
d = build_density(params)

print(f"n={params.n}, alpha={params.alpha}, beta={params.beta}")
print("kappa_j coefficients (f(x) = exp(-5x) * sum_j kappa_j x^j):")
for j, kj in sorted(d.kappa_map().items()):
    print(f"  kappa_{j} = {format_scalar(kj)}")

print("\nmoments (exact):")
for eta in range(4):
    print(f"  <x^{eta}> = {format_scalar(moment_unrestricted(d, eta))}")

xs = np.linspace(0, 40, 20001)
print(f"\ntrapezoid check of the normalization: {np.trapezoid(d.pdf(xs), xs):.10f}")

# --- half-integer beta works the same way ---------------------------------

d_half = build_density(EnsembleParams(4, 3, Fraction(1, 2)))
print(f"\nbeta=1/2: <x> = {format_scalar(moment_unrestricted(d_half, 1))}"
      f" = {to_float(moment_unrestricted(d_half, 1)):.6f}")

# --- irrational beta switches to 256-bit floats ---------------------------

from betawishart import parse_real

beta_e = parse_real("e", 256)
d_e = build_density(EnsembleParams(3, 2, beta_e, precision=256))
print("\nbeta=e coefficients (256-bit floats):")
for j, kj in sorted(d_e.kappa_map().items()):
    print(f"  kappa_{j} = {to_float(kj):.12g}")

# --- fixed trace: condition on sum of eigenvalues = 1 ---------------------

ft = build_fixed_trace(EnsembleParams(5, 2, Fraction(2)))
print(f"\nfixed trace, support is [0, 1/5]:")
print(f"  f_F(0.1)  = {ft.pdf(0.1):.6f}")
print(f"  f_F(0.21) = {ft.pdf(0.21):.6f}   (beyond the support edge)")
print(f"  F_F(0.2)  = {ft.cdf(0.2):.12f}  (saturates at the edge)")
print(f"  <x>_F = {format_scalar(moment_fixed_trace(ft, 1))}")
