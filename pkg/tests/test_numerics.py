import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from vacshift.numerics import (
    CutoffKind,
    CutoffSpec,
    NonConvergenceError,
    QuadratureError,
    SummandSpec,
    abel_sum,
    cutoff_integral,
    cutoff_weight,
    gauss_hermite_average,
    integrate_semi_infinite,
    polygamma2,
    richardson_series,
    sum_minus_integral,
    truncation_index,
    weighted_series,
    zeta3,
)


@pytest.mark.parametrize("x", [1e-3, 0.1, 0.5, 0.98, 1.0, 1.5, 2.0, 7.3, 10.0, 55.0, 1e4])
def test_polygamma2_matches_scipy(x):
    expected = special.polygamma(2, x)
    assert polygamma2(x) == pytest.approx(expected, rel=1e-13)


def test_polygamma2_special_value():
    # psi_2(1) = -2 zeta(3)
    assert polygamma2(1.0) == pytest.approx(-2 * special.zeta(3), rel=1e-14)


def test_polygamma2_rejects_non_positive():
    with pytest.raises(ValueError):
        polygamma2(0.0)
    with pytest.raises(ValueError):
        polygamma2(-0.5)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=1e-2, max_value=50.0))
def test_polygamma2_recurrence(x):
    # psi_2(x + 1) = psi_2(x) + 2/x^3, compared on the side without cancellation
    assert polygamma2(x) == pytest.approx(polygamma2(x + 1) - 2 / x**3, rel=1e-12)


def test_zeta3_matches_scipy():
    assert zeta3() == pytest.approx(special.zeta(3), rel=1e-15)


def test_logistic_weight_shape():
    c = CutoffSpec.logistic(10)
    assert cutoff_weight(c, 10.0) == pytest.approx(0.5)
    assert cutoff_weight(c, 0.0) == pytest.approx(1 - 1 / (1 + math.exp(10)))
    assert cutoff_weight(c, 1e6) == 0.0
    w = [cutoff_weight(c, nu) for nu in np.linspace(0, 40, 81)]
    assert all(a >= b for a, b in zip(w, w[1:]))


def test_sharp_and_infinite_cutoff():
    c = CutoffSpec.sharp(3.5)
    assert cutoff_weight(c, 3.5) == 1.0
    assert cutoff_weight(c, 3.6) == 0.0
    assert cutoff_weight(CutoffSpec.none(), 1e9) == 1.0
    assert truncation_index(CutoffSpec.logistic(2)) == 2 + 100


def test_cutoff_validation():
    with pytest.raises(ValueError):
        CutoffSpec.logistic(0)
    with pytest.raises(ValueError):
        CutoffSpec(CutoffKind.CUSTOM, 1.0)
    with pytest.raises(ValueError):
        cutoff_weight(CutoffSpec.logistic(1), -1.0)


def test_quadrature_semi_infinite():
    assert integrate_semi_infinite(lambda x: math.exp(-x), 0.0) == pytest.approx(1.0, rel=1e-10)
    assert integrate_semi_infinite(lambda x: 1 / (x * x), 1.0) == pytest.approx(1.0, rel=1e-10)
    value = integrate_semi_infinite(lambda x: math.exp(-x) * math.sin(x) ** 2, 0.0, breakpoints=[1.0, 5.0])
    assert value == pytest.approx(0.4, rel=1e-10)


def test_quadrature_failure_is_reported():
    with pytest.raises(QuadratureError):
        integrate_semi_infinite(lambda x: 1 / x, 1.0, limit=20)


def test_weighted_series_geometric():
    # sum' e^-n with the logistic weight at a large cutoff is 1/(1-1/e) - 1/2
    c = CutoffSpec.logistic(60)
    res = weighted_series(SummandSpec(lambda n: math.exp(-n)), c)
    assert res.value == pytest.approx(1 / (1 - math.exp(-1)) - 0.5, rel=1e-12)


def test_weighted_series_sharp_rounds_cutoff_down():
    res = weighted_series(SummandSpec(lambda n: 1.0, half_weight_at_zero=False), CutoffSpec.sharp(4.9))
    assert res.value == 5.0
    assert res.tail_estimate == 0.0


def test_weighted_series_reports_non_convergence():
    c = CutoffSpec(CutoffKind.CUSTOM, 2.0, lambda nu: 1.0, tag="flat")
    with pytest.raises(NonConvergenceError):
        weighted_series(SummandSpec(lambda n: 1.0), c)


def test_sum_minus_integral_euler_maclaurin():
    # sum' e^-n - int e^-n = 1/(1-1/e) - 1/2 - 1, a pure Euler-Maclaurin remainder
    c = CutoffSpec.logistic(60)
    res = sum_minus_integral(SummandSpec(lambda n: math.exp(-n), regularized=True), c)
    assert res.value == pytest.approx(1 / (1 - math.exp(-1)) - 1.5, rel=1e-9)


def test_cutoff_integral_logistic_closed_form():
    c = CutoffSpec.logistic(8)
    # int_n^inf w = ln(1 + e^(lam - n))
    assert cutoff_integral(c, lambda nu: 1.0, 3.0) == pytest.approx(math.log1p(math.exp(5)), rel=1e-10)
    assert cutoff_integral(CutoffSpec.sharp(8), lambda nu: 1.0, 3.0) == pytest.approx(5.0)


def test_gauss_hermite_moments():
    sigma = 0.7
    assert gauss_hermite_average(lambda x, y, z: x * x, sigma) == pytest.approx(sigma**2, rel=1e-12)
    assert gauss_hermite_average(lambda x, y, z: z**4, sigma) == pytest.approx(3 * sigma**4, rel=1e-12)
    assert gauss_hermite_average(lambda x, y, z: x * y * z, sigma) == pytest.approx(0.0, abs=1e-15)


def test_gauss_hermite_mask_renormalizes():
    half = gauss_hermite_average(lambda x, y, z: np.ones_like(z), 1.0, order=20, accept=lambda x, y, z: z > 0)
    assert half == pytest.approx(1.0, rel=1e-14)
    # <z> over the half space is sqrt(2/pi); the step at z = 0 limits the rule to percent accuracy
    avg = gauss_hermite_average(lambda x, y, z: z, 1.0, order=40, accept=lambda x, y, z: z > 0)
    assert avg == pytest.approx(math.sqrt(2 / math.pi), rel=2e-2)


def test_richardson_cubic_decay():
    # partial sums of 1/n^3 approach zeta(3) like N^-2, the case the image sums need
    def block(lo, hi):
        n = np.arange(lo, hi, dtype=float)
        return np.sum(1 / n**3)

    assert richardson_series(block) == pytest.approx(special.zeta(3), rel=1e-12)


def test_richardson_gives_up():
    def block(lo, hi):
        return float(hi - lo)

    with pytest.raises(NonConvergenceError):
        richardson_series(block, max_n=2**10)


def test_abel_sum_alternating():
    # Abel sums: sum (-1)^n = -1/2, sum (-1)^n n = -1/4
    assert abel_sum(lambda n: (-1.0) ** n) == pytest.approx(-0.5, abs=1e-10)
    assert abel_sum(lambda n: (-1.0) ** n * n) == pytest.approx(-0.25, abs=1e-8)
