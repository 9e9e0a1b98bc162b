import math
from fractions import Fraction

import numpy as np
import pytest

from betawishart.ensemble import EnsembleParams, UnsupportedParameterError
from betawishart.density import DomainError, build_density, build_fixed_trace
from betawishart.asymptotics import (
    SoftEdgeScaling,
    _helper_chain,
    ld_left_rate,
    ld_log_density,
    ld_params,
    ld_right_rate,
    load_tw_table,
    soft_edge_transform,
    tw_tail_log,
)


def test_scaling_constants():
    s = SoftEdgeScaling.from_params(EnsembleParams(5, 2, Fraction(2)))
    assert s.m == 7
    assert abs(s.nu - (math.sqrt(5) - math.sqrt(7)) ** 2) < 1e-15
    assert s.sigma < 0


def test_soft_edge_square_case_rejected():
    # alpha = beta/2 - 1 gives m = n: hard edge, no soft-edge scaling
    with pytest.raises(UnsupportedParameterError):
        soft_edge_transform(build_density(EnsembleParams(4, 0, Fraction(2))), [0.0])


def test_soft_edge_preserves_probability():
    params = EnsembleParams(6, 6, Fraction(2))
    d = build_density(params)
    scaling = SoftEdgeScaling.from_params(params)
    s_hi = scaling.nu / (-scaling.sigma)  # s where the eigenvalue hits 0
    grid = np.linspace(-30, s_hi * (1 - 1e-9), 4000)
    pairs = soft_edge_transform(d, grid)
    vals = np.array([v for _, v in pairs])
    total = np.trapezoid(vals, grid)
    assert abs(total - 1) < 1e-8
    assert np.all(vals >= 0)


def test_soft_edge_fixed_trace_scaling():
    params = EnsembleParams(5, 4, Fraction(2))
    ft = build_fixed_trace(params)
    d = build_density(params)
    scaling = SoftEdgeScaling.from_params(params)
    s_hi = scaling.nu / (-scaling.sigma)
    grid = np.linspace(-25, s_hi * (1 - 1e-9), 4000)
    vals = np.array([v for _, v in soft_edge_transform(ft, grid)])
    assert abs(np.trapezoid(vals, grid) - 1) < 1e-6
    # both ensembles collapse onto the same limiting shape: peaks roughly align
    vu = np.array([v for _, v in soft_edge_transform(d, grid)])
    assert abs(grid[np.argmax(vals)] - grid[np.argmax(vu)]) < 1.0


def test_soft_edge_domain_error():
    d = build_density(EnsembleParams(5, 2, Fraction(2)))
    scaling = SoftEdgeScaling.from_params(d.params)
    too_far = scaling.nu / (-scaling.sigma) + 1.0
    with pytest.raises(DomainError):
        soft_edge_transform(d, [too_far])


def test_ld_anchors_zero():
    for n, alpha, beta in [(25, 225, Fraction(2)), (10, 10, Fraction(1)), (8, 4, Fraction(4))]:
        p = ld_params(EnsembleParams(n, alpha, beta))
        assert ld_left_rate(p, 0.0) == 0.0
        assert ld_right_rate(p, 0.0) == 0.0


def test_ld_rates_increase_away_from_typical():
    p = ld_params(EnsembleParams(25, 225, Fraction(2)))
    zs = np.linspace(0, p.zeta_minus * 0.999, 50)
    lefts = [ld_left_rate(p, z) for z in zs]
    assert all(b >= a - 1e-12 for a, b in zip(lefts, lefts[1:]))
    zs = np.linspace(0, 10, 50)
    rights = [ld_right_rate(p, z) for z in zs]
    assert all(b >= a - 1e-12 for a, b in zip(rights, rights[1:]))


def test_ld_domain_guards():
    p = ld_params(EnsembleParams(25, 225, Fraction(2)))
    with pytest.raises(DomainError):
        ld_left_rate(p, p.zeta_minus)
    with pytest.raises(DomainError):
        ld_left_rate(p, -0.1)
    with pytest.raises(DomainError):
        ld_right_rate(p, -0.1)


def test_helper_chain_solves_cubic():
    for beta in (Fraction(1), Fraction(2), Fraction(3), Fraction(4)):
        p = ld_params(EnsembleParams(12, 30, beta))
        for zeta in np.linspace(p.zeta_minus, p.zeta_minus + 10, 40):
            P, Q, B, R, theta, W, U, Delta = _helper_chain(p.A, float(zeta))
            scale = max(abs(W) ** 3, abs(P * W), abs(Q), 1.0)
            assert abs(W**3 + P * W + Q) <= 1e-10 * scale
            assert Delta > 0
            assert math.isfinite(U)


def test_ld_log_density_continuous_at_pivot():
    params = EnsembleParams(25, 225, Fraction(2))
    p = ld_params(params)
    pivot = params.n * p.zeta_minus
    below = ld_log_density(params, pivot * (1 - 1e-9))
    above = ld_log_density(params, pivot * (1 + 1e-9))
    assert abs(below - above) < 1e-4
    assert ld_log_density(params, pivot) == 0.0


def test_ld_log_density_finite_at_origin():
    params = EnsembleParams(25, 225, Fraction(2))
    v = ld_log_density(params, 0.0)
    assert math.isfinite(v) and v < 0


def test_tw_tail_exponents():
    assert tw_tail_log(-2.0, Fraction(2), "left") == -2 * 8 / 24
    assert abs(tw_tail_log(4.0, Fraction(2), "right") - (-2 * 2 * 8 / 3)) < 1e-12
    with pytest.raises(DomainError):
        tw_tail_log(1.0, Fraction(2), "left")
    with pytest.raises(DomainError):
        tw_tail_log(-1.0, Fraction(2), "right")
    with pytest.raises(ValueError):
        tw_tail_log(1.0, Fraction(2), "middle")


def test_tw_table_ingestion(tmp_path):
    path = tmp_path / "tw.csv"
    path.write_text("s,density\n-2,0.1\n0,0.3\n2,0.05\n")
    interp = load_tw_table(path)
    assert interp(0.0) == 0.3
    assert abs(interp(-1.0) - 0.2) < 1e-15
    assert np.allclose(interp(np.array([-2.0, 2.0])), [0.1, 0.05])
    with pytest.raises(DomainError):
        interp(3.0)


def test_tw_table_malformed(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("s,density\n-2,0.1\noops,zzz\n")
    with pytest.raises(ValueError):
        load_tw_table(path)
    short = tmp_path / "short.csv"
    short.write_text("0,1\n")
    with pytest.raises(ValueError):
        load_tw_table(short)
