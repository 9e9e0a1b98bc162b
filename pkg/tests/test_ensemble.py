import math
from fractions import Fraction

import pytest

from betawishart.ensemble import (
    EnsembleParams,
    InternalConsistencyError,
    UnsupportedParameterError,
    compute_g,
    norm_constant_c,
    selberg_constant_C,
)
from betawishart.fields import to_float

BETAS = [Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3), Fraction(4)]


def test_parameter_validation():
    with pytest.raises(UnsupportedParameterError):
        EnsembleParams(0, 1, Fraction(2))
    with pytest.raises(UnsupportedParameterError):
        EnsembleParams(3, -1, Fraction(2))
    with pytest.raises(UnsupportedParameterError):
        EnsembleParams(3, 1, Fraction(0))
    with pytest.raises(UnsupportedParameterError):
        EnsembleParams(3, Fraction(1, 2), Fraction(2))


def test_mode_selection():
    assert EnsembleParams(3, 2, Fraction(2)).exact
    assert not EnsembleParams(3, 2, Fraction(2), precision=128).exact
    assert not EnsembleParams(3, 2, 2.0).exact


def test_gamma_value():
    # n*(alpha + beta*(n-1)/2 + 1)
    p = EnsembleParams(3, 4, Fraction(2))
    assert p.gamma() == Fraction(21)
    p = EnsembleParams(4, 3, Fraction(1, 2))
    assert p.gamma() == 4 * (3 + Fraction(1, 2) * 3 / 2 + 1)


def test_base_case_alpha_zero():
    for n in (1, 2, 5):
        g = compute_g(EnsembleParams(n, 0, Fraction(2)))
        assert g.poly.degree == 0
        assert g(Fraction(7)) == 1


def test_degree_law():
    for n in range(1, 13):
        for alpha in range(0, 9, 2):
            g = compute_g(EnsembleParams(n, alpha, Fraction(2)))
            assert g.poly.degree == alpha * (n - 1), (n, alpha)


def test_coefficients_positive():
    # the polynomial factor of a density must not oscillate in sign
    for beta in BETAS:
        g = compute_g(EnsembleParams(4, 3, beta))
        assert all(c > 0 for c in g.poly.coeffs)


def test_n1_is_gamma_density():
    # single eigenvalue: f(x) = c x^alpha e^{-beta x/2}, g identically 1
    for alpha in range(4):
        p = EnsembleParams(1, alpha, Fraction(3))
        g = compute_g(p)
        assert g.poly.coeffs == [Fraction(1)]
        c = norm_constant_c(p, g)
        # c = (beta/2)^(alpha+1)/alpha!
        assert c == Fraction(3, 2) ** (alpha + 1) / math.factorial(alpha)


def test_normalization_duality_sweep():
    # the exact reciprocal-integral route must agree with the Gamma-product form
    for n in range(1, 11):
        for alpha in range(0, 7, 3):
            for beta in BETAS:
                p = EnsembleParams(n, alpha, beta)
                c = norm_constant_c(p, compute_g(p))
                assert c > 0


def test_norm_route_disagreement_raises():
    p = EnsembleParams(3, 2, Fraction(2))
    g = compute_g(p)
    bad = type(g)(p, g.poly.scale(Fraction(2)))  # corrupt the polynomial
    with pytest.raises(InternalConsistencyError):
        norm_constant_c(p, bad)


def test_selberg_constant_positive():
    for beta in BETAS:
        assert to_float(selberg_constant_C(EnsembleParams(3, 2, beta))) > 0


def test_float_mode_matches_exact():
    pe = EnsembleParams(4, 3, Fraction(2))
    pf = EnsembleParams(4, 3, Fraction(2), precision=256)
    ge, gf = compute_g(pe), compute_g(pf)
    for ce, cf in zip(ge.poly.coeffs, gf.poly.coeffs):
        assert abs(to_float(cf) - to_float(ce)) <= 1e-12 * abs(to_float(ce))


def test_m_equivalent():
    p = EnsembleParams(5, 2, Fraction(2))
    assert p.m_equivalent() == 5 - 1 + Fraction(2 * 3, 2) == 7
