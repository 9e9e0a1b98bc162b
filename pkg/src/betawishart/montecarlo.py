"""Sampling smallest eigenvalues from the bidiagonal beta-model, plus KS statistics.

The model: A is lower bidiagonal with chi-distributed entries, diagonal
dofs beta*(n-j)+2*(alpha+1) and subdiagonal dofs beta*(n-j); the matrix
W = A A^T / beta has the target eigenvalue law for every beta > 0.  We never
form W densely: the symmetric tridiagonal T = A A^T / beta has

    T[j,j]   = (d_j^2 + e_{j-1}^2)/beta          (e_0 = 0)
    T[j,j+1] = d_j * e_j / beta

and its smallest eigenvalue is extracted by Sturm-count bisection.
"""

import json
from dataclasses import dataclass, field, replace

import numpy as np

from .ensemble import EnsembleParams, UnsupportedParameterError
from .fields import to_float

_BISECT_MAX_ITER = 200


class SamplingError(RuntimeError):
    pass


@dataclass(frozen=True)
class SampleConfig:
    params: EnsembleParams
    count: int
    seed: int
    mode: str = "unrestricted"  # unrestricted | fixed_trace | delay_time
    tau_h: float = 1.0
    workers: int = 1

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.mode not in ("unrestricted", "fixed_trace", "delay_time"):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass(frozen=True)
class EmpiricalSample:
    values: np.ndarray = field(compare=False)
    config: SampleConfig = None

    def to_csv(self):
        return "\n".join(repr(float(v)) for v in self.values) + "\n"

    def to_json(self):
        cfg = self.config
        p = cfg.params
        return json.dumps(
            {
                "config": {
                    "n": p.n,
                    "alpha": p.alpha,
                    "beta": to_float(p.beta_scalar()),
                    "count": cfg.count,
                    "seed": cfg.seed,
                    "mode": cfg.mode,
                    "tau_h": cfg.tau_h,
                    "workers": cfg.workers,
                },
                "values": [float(v) for v in self.values],
            }
        )

    def histogram_csv(self, bins=60):
        density, edges = np.histogram(self.values, bins=bins, density=True)
        centers = (edges[:-1] + edges[1:]) / 2
        lines = [f"{repr(float(c))},{repr(float(d))}" for c, d in zip(centers, density)]
        return "\n".join(lines) + "\n"


def sample_chi(dof, rng, size=None):
    """chi_d draws via sqrt(2*Gamma(d/2)): Gamma(d/2, scale=2) is chi-square_d."""
    if np.any(np.asarray(dof) <= 0):
        raise ValueError("chi degrees of freedom must be positive")
    return np.sqrt(2.0 * rng.gamma(np.asarray(dof, dtype=float) / 2.0, size=size))


def _chi_dofs(params: EnsembleParams):
    n, alpha = params.n, params.alpha
    b = to_float(params.beta_scalar())
    j = np.arange(1, n + 1, dtype=float)
    diag_dof = b * (n - j) + 2 * (alpha + 1)
    sub_dof = b * (n - j[:-1])
    return diag_dof, sub_dof


def _tridiagonal_batch(params: EnsembleParams, rng, size):
    """Draw `size` tridiagonal matrices; returns (t, o) with shapes (size,n), (size,n-1)."""
    n = params.n
    b = to_float(params.beta_scalar())
    diag_dof, sub_dof = _chi_dofs(params)
    d = sample_chi(diag_dof, rng, size=(size, n))
    if n > 1:
        e = sample_chi(sub_dof, rng, size=(size, n - 1))
    else:
        e = np.zeros((size, 0))
    t = d**2
    t[:, 1:] += e**2
    t /= b
    o = d[:, :-1] * e / b
    return t, o


def sturm_count(t, o, x):
    """Number of eigenvalues of the tridiagonal(s) strictly below x (vectorized).

    Negative pivots of the shifted LDL^T factorization T - x*I = L D L^T count
    the eigenvalues below the pivot (Sylvester inertia).
    """
    t = np.atleast_2d(t)
    o = np.atleast_2d(o)
    x = np.asarray(x, dtype=float)
    tiny = np.finfo(float).tiny
    q = t[:, 0] - x
    count = (q < 0).astype(np.int64)
    for k in range(1, t.shape[1]):
        q = np.where(np.abs(q) < tiny, -tiny, q)
        q = (t[:, k] - x) - o[:, k - 1] ** 2 / q
        count += q < 0
    return count


def smallest_eigenvalues(t, o, rel_tol=1e-12):
    """Smallest eigenvalue of each tridiagonal by bisection on the Sturm count."""
    t = np.atleast_2d(t)
    o = np.atleast_2d(o)
    lo = np.zeros(t.shape[0])
    hi = t.min(axis=1) * (1 + 1e-9) + 1e-300
    bad = sturm_count(t, o, hi) < 1
    if np.any(bad):  # min-diagonal bound can graze the eigenvalue itself
        hi[bad] = hi[bad] * 2 + 1.0
        if np.any(sturm_count(t, o, hi) < 1):
            raise SamplingError("bisection upper bound failed to capture an eigenvalue")
    for _ in range(_BISECT_MAX_ITER):
        mid = (lo + hi) / 2
        below = sturm_count(t, o, mid) >= 1
        hi = np.where(below, mid, hi)
        lo = np.where(below, lo, mid)
        if np.all(hi - lo <= rel_tol * (1 + np.abs(hi))):
            break
    else:
        raise SamplingError("Sturm bisection did not converge in 200 iterations")
    return (lo + hi) / 2


def sample_smallest_eigenvalue(cfg: SampleConfig, rng):
    """One smallest-eigenvalue draw from the bidiagonal model."""
    t, o = _tridiagonal_batch(cfg.params, rng, 1)
    return float(smallest_eigenvalues(t, o)[0])


def sample_fixed_trace(cfg: SampleConfig, rng):
    """One draw of lambda_min(W)/tr(W); always in (0, 1/n]."""
    t, o = _tridiagonal_batch(cfg.params, rng, 1)
    return float(smallest_eigenvalues(t, o)[0] / t.sum())


def delay_time_params(n, beta, precision=None):
    """Wishart parameters of the delay-rate ensemble: alpha = beta*n/2 (must be integer)."""
    a2 = to_float(beta) * n
    alpha = int(round(a2 / 2))
    if abs(a2 / 2 - alpha) > 1e-12 or alpha < 0:
        raise UnsupportedParameterError("beta*n/2 must be a non-negative integer")
    beta_exact = beta if not isinstance(beta, float) else beta
    return EnsembleParams(n, alpha, beta_exact, precision=precision)


def sample_largest_delay_time(n, beta, tau_h, rng):
    """One draw of the largest proper delay time tau_H / lambda_min."""
    params = delay_time_params(n, beta)
    t, o = _tridiagonal_batch(params, rng, 1)
    return float(tau_h / smallest_eigenvalues(t, o)[0])


def _draw_chunk(cfg: SampleConfig, rng, size):
    if cfg.mode == "delay_time":
        params = delay_time_params(cfg.params.n, cfg.params.beta)
        t, o = _tridiagonal_batch(params, rng, size)
        return cfg.tau_h / smallest_eigenvalues(t, o)
    t, o = _tridiagonal_batch(cfg.params, rng, size)
    lam = smallest_eigenvalues(t, o)
    if cfg.mode == "fixed_trace":
        return lam / t.sum(axis=1)
    return lam


def draw_sample(cfg: SampleConfig) -> EmpiricalSample:
    """Full deterministic sample: fixed (seed, workers) gives a bit-identical result.

    The seed is split into independent per-worker streams; chunk sizes and
    merge order depend only on (count, workers).
    """
    streams = np.random.SeedSequence(cfg.seed).spawn(cfg.workers)
    base = cfg.count // cfg.workers
    sizes = [base + (1 if i < cfg.count % cfg.workers else 0) for i in range(cfg.workers)]
    chunks = []
    for ss, size in zip(streams, sizes):
        if size == 0:
            continue
        rng = np.random.default_rng(ss)
        chunks.append(_draw_chunk(cfg, rng, size))
    values = np.sort(np.concatenate(chunks))
    return EmpiricalSample(values=values, config=cfg)


def ks_statistic(sample: EmpiricalSample, cdf):
    """Kolmogorov-Smirnov sup distance between the empirical CDF and `cdf`."""
    values = np.asarray(sample.values if isinstance(sample, EmpiricalSample) else sample)
    if values.size == 0:
        raise ValueError("empty sample")
    n = values.size
    f = np.asarray(cdf(values), dtype=float)
    i = np.arange(1, n + 1)
    return float(np.max(np.maximum(np.abs(i / n - f), np.abs((i - 1) / n - f))))
