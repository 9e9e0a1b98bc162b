"""Soft-edge scaling, Tracy-Widom tail exponents, and large-deviation rate functions.

The Tracy-Widom density itself is never computed here; reference curves are
read from an external two-column table when an overlay is wanted.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from .density import ClosedFormDensity, FixedTraceDensity, DomainError
from .ensemble import EnsembleParams, UnsupportedParameterError
from .fields import to_float

log = logging.getLogger(__name__)


def _real_cbrt(v):
    return math.copysign(abs(v) ** (1.0 / 3.0), v)


@dataclass(frozen=True)
class SoftEdgeScaling:
    """Shift nu and scale sigma mapping the smallest eigenvalue to the soft-edge variable."""

    n: int
    m: float
    nu: float
    sigma: float

    @classmethod
    def from_params(cls, params: EnsembleParams):
        n = params.n
        m = to_float(params.m_equivalent())
        nu = (math.sqrt(n) - math.sqrt(m)) ** 2
        sigma = (math.sqrt(n) - math.sqrt(m)) * _real_cbrt(1 / math.sqrt(n) - 1 / math.sqrt(m))
        return cls(n=n, m=m, nu=nu, sigma=sigma)


def soft_edge_transform(d, grid):
    """Map the exact density onto the soft-edge variable s.

    Returns a list of (s, value) pairs with value = -sigma*f(sigma*s + nu);
    a fixed-trace density gets the extra mean-trace scaling by m*n.
    Requires m > n (sigma < 0); the square case is the extreme hard edge and
    is not a soft-edge scenario.
    """
    scaling = SoftEdgeScaling.from_params(d.params)
    if scaling.sigma >= 0:
        raise UnsupportedParameterError(
            "soft-edge transform needs m > n (sigma < 0); the square case scales to an exponential"
        )
    fixed = isinstance(d, FixedTraceDensity)
    mn = scaling.m * scaling.n
    out = []
    for s in grid:
        arg = scaling.sigma * s + scaling.nu
        if arg < 0:
            raise DomainError(f"grid point s={s} maps to negative eigenvalue {arg}")
        if fixed:
            out.append((s, -scaling.sigma / mn * d.pdf(arg / mn)))
        else:
            out.append((s, -scaling.sigma * d.pdf(arg)))
    return out


@dataclass(frozen=True)
class LargeDeviationParams:
    """Constants of the large-deviation description of the smallest eigenvalue."""

    A: float
    zeta_minus: float
    zeta_plus: float
    delta_minus: float


def ld_params(params: EnsembleParams) -> LargeDeviationParams:
    b = to_float(params.beta_scalar())
    A = (2 * (params.alpha + 1) - b) / (b * params.n)
    if A <= -1:
        raise DomainError(f"large-deviation parameters need A > -1, got A={A}")
    root = math.sqrt(1 + A)
    return LargeDeviationParams(
        A=A,
        zeta_minus=(1 - root) ** 2,
        zeta_plus=(1 + root) ** 2,
        delta_minus=4 * root,
    )


def ld_left_rate(p: LargeDeviationParams, z):
    """Left rate function phi_-(z) for deviations below the typical value; z in [0, zeta_-)."""
    if z < 0 or z >= p.zeta_minus:
        raise DomainError(f"z={z} outside [0, zeta_-={p.zeta_minus})")
    if z == 0:
        return 0.0
    A, dm = p.A, p.delta_minus
    sz = math.sqrt(z)
    szd = math.sqrt(z + dm)
    out = -sz * szd / 2 + 2 * math.log((szd - sz) / math.sqrt(dm))
    if A != 0:
        out += -(A / 2) * math.log(1 - z / p.zeta_minus)
        out += A * math.log(1 + 2 * math.sqrt(z / p.zeta_minus) * (szd - sz) / dm)
    return out


def _helper_chain(A, zeta):
    """The cubic-resolvent helper chain (P, Q, B, R, theta, W, U, Delta) at zeta."""
    P = -zeta - 2 * (A + 2)
    if P >= 0:
        raise DomainError(f"helper chain needs P < 0, got P={P}")
    Q = 2 * A * math.sqrt(zeta)
    B = -(P**3 / 27 + Q**2 / 4)
    if B < 0:
        raise DomainError(f"helper chain needs B >= 0, got B={B}")
    R = math.sqrt(-(P**3) / 27)
    # two-argument arctangent keeps the branch continuous when Q changes sign
    theta = math.atan2(2 * math.sqrt(B), Q)
    W = (2 * P / (3 * _real_cbrt(R))) * math.cos((theta + 2 * math.pi) / 3)
    U = W * W
    Delta = U - zeta
    residual = W**3 + P * W + Q
    scale = max(abs(W) ** 3, abs(P * W), abs(Q), 1.0)
    if abs(residual) > 1e-8 * scale or Delta <= 0:
        log.warning(
            "helper-chain branch diagnostic at zeta=%g: cubic residual=%g, Delta=%g",
            zeta,
            residual,
            Delta,
        )
    return P, Q, B, R, theta, W, U, Delta


def _entropy_like_S(A, zeta):
    _, _, _, _, _, W, U, Delta = _helper_chain(A, zeta)
    out = (U + zeta) / 2 - Delta**2 / 32 - math.log(Delta / 4)
    out += (A / 4) * (W - math.sqrt(zeta)) ** 2
    if A != 0:
        out += (A**2 / 4) * math.log(zeta * U)
    out += -A * (A + 2) * math.log((W + math.sqrt(zeta)) / 2)
    return out


def ld_right_rate(p: LargeDeviationParams, z):
    """Right rate function phi_+(z) = [S(z+zeta_-) - S(zeta_-)]/2 for z >= 0."""
    if z < 0:
        raise DomainError(f"z={z} must be non-negative")
    if z == 0:
        return 0.0
    return (_entropy_like_S(p.A, z + p.zeta_minus) - _entropy_like_S(p.A, p.zeta_minus)) / 2


def tw_tail_log(x, beta, side):
    """Leading-order log of the Tracy-Widom density tails.

    side='left' (x < 0): -beta*|x|^3/24;  side='right' (x > 0): -2*beta*x^(3/2)/3.
    """
    beta = to_float(beta)
    if side == "left":
        if x >= 0:
            raise DomainError("left tail needs x < 0")
        return -beta * abs(x) ** 3 / 24
    if side == "right":
        if x <= 0:
            raise DomainError("right tail needs x > 0")
        return -2 * beta * x ** 1.5 / 3
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def ld_log_density(params: EnsembleParams, x):
    """Piecewise (unnormalized) large-deviation log-density of the smallest eigenvalue.

    ln f ~ -beta*n*phi_-((n*zeta_- - x)/n) below the typical value n*zeta_-,
    and -beta*n^2*phi_+((x - n*zeta_-)/n) above it.
    """
    if x < 0:
        raise DomainError("x must be non-negative")
    p = ld_params(params)
    b = to_float(params.beta_scalar())
    n = params.n
    pivot = n * p.zeta_minus
    if x < pivot:
        z = (pivot - x) / n
        if z >= p.zeta_minus:  # x == 0 with rounding: the deepest left deviation
            z = math.nextafter(p.zeta_minus, 0.0)
        return -b * n * ld_left_rate(p, z)
    return -b * n * n * ld_right_rate(p, (x - pivot) / n)


def load_tw_table(path):
    """Read a two-column CSV (s, density), header optional; returns an interpolator.

    Linear interpolation between rows; querying outside the tabulated range
    raises DomainError.
    """
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            parts = [p.strip() for p in line.split(",")]
            try:
                rows.append((float(parts[0]), float(parts[1])))
            except (ValueError, IndexError):
                if not rows:
                    continue  # header line
                raise ValueError(f"malformed table row: {line!r}")
    if len(rows) < 2:
        raise ValueError(f"table {path} needs at least two data rows")
    rows.sort()
    s = np.array([r[0] for r in rows])
    v = np.array([r[1] for r in rows])

    def interp(query):
        q = np.asarray(query, dtype=float)
        if np.any(q < s[0]) or np.any(q > s[-1]):
            raise DomainError(f"query outside table range [{s[0]}, {s[-1]}]")
        out = np.interp(q, s, v)
        return out if np.ndim(query) > 0 else float(out)

    return interp
