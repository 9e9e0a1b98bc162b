"""Exact smallest-eigenvalue densities for beta-Wishart-Laguerre ensembles.

Closed-form densities, CDFs, and moments of the smallest eigenvalue
(unrestricted and fixed-trace), matrix-argument confluent hypergeometric
values, bidiagonal-model Monte-Carlo sampling, soft-edge scaling, and
large-deviation rate functions, all over exact rational or high-precision
float coefficient fields.
"""

__version__ = "0.1.0"

from .fields import (
    DEFAULT_PRECISION_BITS,
    MixedFieldError,
    parse_real,
    precision_bits,
    to_float,
    to_mpfr,
)
from .polynomials import DensePolynomial
from .ensemble import (
    EnsembleParams,
    GPolynomial,
    InternalConsistencyError,
    UnsupportedParameterError,
    compute_g,
    norm_constant_c,
    selberg_constant_C,
)
from .density import (
    ClosedFormDensity,
    DelayTimeDensity,
    DivergentMomentError,
    DomainError,
    FixedTraceDensity,
    build_density,
    build_fixed_trace,
    delay_time_density,
    moment_fixed_trace,
    moment_unrestricted,
)
from .hypergeom import HypergeomResult, hyp1f1_matrix, kummer_1f1_polynomial
from .crosscheck import (
    kappa_via_partitions,
    mixed_moment,
    mixed_moment_exact,
    quadrature_g,
)
from .asymptotics import (
    LargeDeviationParams,
    SoftEdgeScaling,
    ld_left_rate,
    ld_log_density,
    ld_params,
    ld_right_rate,
    load_tw_table,
    soft_edge_transform,
    tw_tail_log,
)
from .montecarlo import (
    EmpiricalSample,
    SampleConfig,
    SamplingError,
    draw_sample,
    ks_statistic,
)

__all__ = [
    "__version__",
    "DEFAULT_PRECISION_BITS",
    "MixedFieldError",
    "parse_real",
    "precision_bits",
    "to_float",
    "to_mpfr",
    "DensePolynomial",
    "EnsembleParams",
    "GPolynomial",
    "InternalConsistencyError",
    "UnsupportedParameterError",
    "compute_g",
    "norm_constant_c",
    "selberg_constant_C",
    "ClosedFormDensity",
    "DelayTimeDensity",
    "DivergentMomentError",
    "DomainError",
    "FixedTraceDensity",
    "build_density",
    "build_fixed_trace",
    "delay_time_density",
    "moment_fixed_trace",
    "moment_unrestricted",
    "HypergeomResult",
    "hyp1f1_matrix",
    "kummer_1f1_polynomial",
    "kappa_via_partitions",
    "mixed_moment",
    "mixed_moment_exact",
    "quadrature_g",
    "LargeDeviationParams",
    "SoftEdgeScaling",
    "ld_left_rate",
    "ld_log_density",
    "ld_params",
    "ld_right_rate",
    "load_tw_table",
    "soft_edge_transform",
    "tw_tail_log",
    "EmpiricalSample",
    "SampleConfig",
    "SamplingError",
    "draw_sample",
    "ks_statistic",
]
