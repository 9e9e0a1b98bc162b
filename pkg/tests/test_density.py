import json
import math
from fractions import Fraction

import numpy as np
import pytest

from betawishart.ensemble import EnsembleParams, UnsupportedParameterError
from betawishart.density import (
    DivergentMomentError,
    DomainError,
    build_density,
    build_fixed_trace,
    delay_time_density,
    moment_fixed_trace,
    moment_unrestricted,
)
from betawishart.fields import to_float
from betawishart import reference_cases as rc


def quad_integral(fn, lo, hi, n=4000):
    xs = np.linspace(lo, hi, n)
    return np.trapezoid(fn(xs), xs)


def test_reference_rows_exact():
    for (n, a, b), (poly, div) in rc.UNRESTRICTED_EXACT.items():
        d = build_density(EnsembleParams(n, a, b))
        kap = d.kappa_map()
        assert set(kap) == set(range(a, a + len(poly)))
        for k, c in enumerate(poly):
            assert kap[a + k] == Fraction(c, div), (n, a, b, k)


def test_fixed_trace_reference_rows_exact():
    for (n, a, b), (scale, poly) in rc.FIXED_TRACE_EXACT.items():
        ft = build_fixed_trace(EnsembleParams(n, a, b))
        tail, coeffs = ft.polynomial_factor()
        assert tail == ft.params.gamma() - n * a - 2
        want = [Fraction(0)] * len(coeffs)
        for k, c in enumerate(poly):
            want[a + k] = Fraction(scale) * c
        assert coeffs == want, (n, a, b)


def test_normalization_integral_exact():
    # <x^0> collapses to the exact normalization identity
    for n, a, b in [(2, 1, Fraction(2)), (5, 2, Fraction(2)), (3, 3, Fraction(4)),
                    (4, 3, Fraction(1, 2)), (6, 2, Fraction(1))]:
        d = build_density(EnsembleParams(n, a, b))
        assert moment_unrestricted(d, 0) == 1


def test_pdf_positive_and_integrates_to_one():
    d = build_density(EnsembleParams(5, 2, Fraction(2)))
    xs = np.linspace(0, 20, 1500)
    vals = d.pdf(xs)
    assert np.all(vals >= 0)
    assert abs(quad_integral(d.pdf, 0, 40, 8000) - 1) < 1e-6


def test_pdf_domain_error():
    d = build_density(EnsembleParams(3, 2, Fraction(2)))
    with pytest.raises(DomainError):
        d.pdf(-0.5)
    with pytest.raises(DomainError):
        d.cdf(np.array([-1.0, 0.5]))


def test_cdf_matches_pdf_by_central_difference():
    d = build_density(EnsembleParams(4, 3, Fraction(2)))
    h = 1e-6
    for x in (0.2, 0.7, 1.5, 3.0):
        deriv = (d.cdf(x + h) - d.cdf(x - h)) / (2 * h)
        assert abs(deriv - d.pdf(x)) <= 1e-5 * max(1.0, d.pdf(x))


def test_cdf_limits_and_monotonicity():
    d = build_density(EnsembleParams(3, 3, Fraction(4)))
    assert d.cdf(0.0) == 0.0
    assert d.cdf(1e6) == 1.0
    xs = np.linspace(0, 15, 400)
    fs = d.cdf(xs)
    assert np.all(np.diff(fs) >= -1e-15)


def test_log_pdf_consistency():
    d = build_density(EnsembleParams(5, 2, Fraction(2)))
    for x in (0.3, 1.0, 4.0):
        assert abs(math.exp(d.log_pdf(x)) - d.pdf(x)) <= 1e-12 * d.pdf(x)
    assert d.log_pdf(0.0) == float("-inf")


def test_moments_match_quadrature():
    d = build_density(EnsembleParams(5, 2, Fraction(2)))
    for eta in (1, 2, 3):
        exact = to_float(moment_unrestricted(d, eta))
        quad = quad_integral(lambda x: d.pdf(x) * x**eta, 0, 60, 40000)
        assert abs(exact - quad) <= 1e-10 * abs(exact) + 1e-12


def test_moment_divergence_guard():
    d = build_density(EnsembleParams(3, 2, Fraction(2)))
    with pytest.raises(DivergentMomentError):
        moment_unrestricted(d, -3)


def test_known_first_moment():
    d = build_density(EnsembleParams(2, 1, Fraction(2)))
    assert moment_unrestricted(d, 1) == Fraction(9, 8)


def test_fixed_trace_support():
    ft = build_fixed_trace(EnsembleParams(5, 2, Fraction(2)))
    assert ft.pdf(0.2) == 0.0
    assert ft.pdf(0.3) == 0.0
    assert ft.pdf(0.1) > 0
    assert np.all(ft.pdf(np.linspace(0, 0.199, 200)) >= 0)


def test_fixed_trace_cdf_saturates():
    ft = build_fixed_trace(EnsembleParams(5, 2, Fraction(2)))
    assert abs(ft.cdf(0.2) - 1.0) < 1e-12
    assert ft.cdf(0.0) == 0.0
    xs = np.linspace(0, 0.2, 300)
    assert np.all(np.diff(ft.cdf(xs)) >= -1e-14)


def test_fixed_trace_cdf_matches_pdf():
    ft = build_fixed_trace(EnsembleParams(4, 3, Fraction(1)))
    h = 1e-7
    for x in (0.05, 0.1, 0.2):
        deriv = (ft.cdf(x + h) - ft.cdf(x - h)) / (2 * h)
        assert abs(deriv - ft.pdf(x)) <= 1e-4 * max(1.0, ft.pdf(x))


def test_fixed_trace_moment_zero_is_one():
    for n, a, b in [(3, 4, Fraction(1, 5)), (5, 2, Fraction(2)), (4, 3, Fraction(4))]:
        ft = build_fixed_trace(EnsembleParams(n, a, b))
        assert moment_fixed_trace(ft, 0) == 1


def test_fixed_trace_guard():
    # gamma - n*alpha - 1 must stay positive for the closed form; for n = 1
    # it is exactly 0 (the trace-normalized eigenvalue is deterministic)
    with pytest.raises(UnsupportedParameterError):
        build_fixed_trace(EnsembleParams(1, 3, Fraction(2)))


def test_delay_time_density_normalized():
    d = delay_time_density(4, Fraction(2), 1.0)
    total = quad_integral(d.pdf, 1e-4, 80, 60000)
    assert abs(total - 1) < 1e-3
    assert abs(d.cdf(1e4) - 1) < 1e-6
    assert d.cdf(1e-9) <= 1e-12


def test_delay_time_parameter_guard():
    with pytest.raises(UnsupportedParameterError):
        delay_time_density(3, Fraction(1), 1.0)  # beta*n/2 = 3/2 not integer
    with pytest.raises(UnsupportedParameterError):
        delay_time_density(4, Fraction(2), -1.0)


def test_json_serialization():
    d = build_density(EnsembleParams(3, 2, Fraction(2)))
    payload = json.loads(d.to_json())
    assert payload["n"] == 3 and payload["alpha"] == 2
    kap = {e["j"]: Fraction(int(e["num"]), int(e["den"])) for e in payload["kappa"]}
    assert kap == d.kappa_map()
    ft = build_fixed_trace(EnsembleParams(3, 2, Fraction(2)))
    assert json.loads(ft.to_json())["fixed_trace"] is True


def test_float_mode_pdf_matches_exact():
    de = build_density(EnsembleParams(4, 3, Fraction(2)))
    df = build_density(EnsembleParams(4, 3, Fraction(2), precision=256))
    for x in (0.1, 1.0, 3.0):
        assert abs(de.pdf(x) - df.pdf(x)) <= 1e-12 * de.pdf(x)
