import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import gammaln

from vacshift.dipole import ALPHA, HBAR_C, DipoleModel
from vacshift.numerics import CutoffSpec
from vacshift.plates_static import PlateGeometry, delta_e_im, f_im
from vacshift.transverse import (
    LambPath,
    bound_ratio,
    delta_e_A,
    f_A,
    f_a2,
    f_ap,
    f_ap_abel,
    g_a2,
    g_ap,
)

LOGISTIC_10 = CutoffSpec.logistic(10)


def binet_g_ap(nu0):
    """Cutoff-free ``g_Ap`` as ``nu0`` times Binet's function ``ln Gamma(z) - (z - 1/2) ln z + z - ln(2 pi)/2``."""
    return nu0 * (gammaln(nu0) - (nu0 - 0.5) * math.log(nu0) + nu0 - 0.5 * math.log(2 * math.pi))


def geometry_for(nu0, x, m):
    return PlateGeometry(nu0 * math.pi * HBAR_C / m.omega0, x)


def test_g_a2_analytic_is_one_twelfth():
    res = g_a2()
    assert res.value == 1 / 12
    assert res.path is LambPath.ANALYTIC_CLOSED_FORM


def test_g_a2_logistic_cutoff():
    res = g_a2(LOGISTIC_10)
    assert res.path is LambPath.NUMERIC_SMOOTH
    assert res.converged
    assert abs(res.value - 1 / 12) < 1e-3


def test_g_a2_sharp_cutoff_oscillates_about_limit():
    lams = np.arange(15.0, 25.0, 0.01)
    values = [g_a2(CutoffSpec.sharp(lam)).value for lam in lams]
    assert g_a2(CutoffSpec.sharp(20.5)).path is LambPath.NUMERIC_SHARP
    assert abs(np.mean(values) - 1 / 12) < 2e-2
    # at integer cutoffs the sharp sum and integral cancel exactly
    assert g_a2(CutoffSpec.sharp(20)).value == pytest.approx(0.0, abs=1e-12)
    assert max(values) - min(values) > 0.1


def test_f_a2_analytic_and_symmetry():
    assert f_a2(0.5).value == pytest.approx(0.25, rel=1e-15)
    for x in (0.1, 0.27, 0.44):
        assert f_a2(x).value == pytest.approx(f_a2(1 - x).value, rel=1e-12)


def test_f_a2_logistic_midplane():
    res = f_a2(0.5, LOGISTIC_10)
    assert abs(res.value - 0.25) < 5e-3
    assert res.warning is None


def test_f_a2_numeric_near_wall_warns():
    res = f_a2(0.05, LOGISTIC_10)
    assert res.warning is not None
    assert f_a2(0.05).warning is None


def test_g_ap_low_frequency_closed_form():
    assert g_ap(1.0).value == pytest.approx(1.5 * math.log(2) + 1 / 24 - 1, rel=1e-14)
    assert g_ap(1.0).value == pytest.approx(0.081387, abs=1e-6)
    assert g_ap(1e-8).value < 1e-6


@pytest.mark.parametrize("nu0", [0.01, 0.1, 1.0, 10.0])
def test_g_ap_numeric_converges_to_binet_form(nu0):
    # the large-cutoff limit is nu0 mu(nu0) exactly; the closed form is its approximation
    assert g_ap(nu0, CutoffSpec.logistic(30)).value == pytest.approx(binet_g_ap(nu0), abs=1e-8)


def test_g_ap_high_frequency_correction_is_negative():
    exact = binet_g_ap(10.0)
    high = g_ap(10.0, path=LambPath.ANALYTIC_HIGH_FREQ).value
    assert high == pytest.approx(1 / 12 - 1 / 36000, rel=1e-15)
    assert abs(exact - high) < 1e-7
    assert abs(exact - (1 / 12 + 1 / 36000)) > 5e-5


def test_g_ap_logistic_at_high_frequency():
    numeric = g_ap(10.0, LOGISTIC_10).value
    assert abs(numeric - g_ap(10.0).value) < 1e-2
    assert abs(numeric - (1 / 12 - 1 / 36000)) < 1e-4


def test_expansion_warnings():
    assert g_ap(5.0).warning is not None
    assert g_ap(0.5, path=LambPath.ANALYTIC_HIGH_FREQ).warning is not None
    assert f_ap(0.5, 0.5, path=LambPath.ANALYTIC_LOW_FREQ).warning is None


def test_f_ap_low_frequency_value():
    for x in (0.1, 0.5, 0.8):
        res = f_ap(0.01, x, path=LambPath.ANALYTIC_LOW_FREQ)
        assert res.value == pytest.approx(0.0025)
    assert f_ap(0.01, 0.5).value == pytest.approx(0.0025, rel=1e-2)


@pytest.mark.parametrize("nu0", [0.01, 0.3, 2.0, 10.0])
@pytest.mark.parametrize("x", [0.2, 0.5, 0.65])
def test_f_ap_contour_matches_abel_summed_series(nu0, x):
    assert f_ap(nu0, x).value == pytest.approx(f_ap_abel(nu0, x), rel=1e-8, abs=1e-12)


def test_f_ap_high_frequency_expansion():
    contour = f_ap(50.0, 0.5).value
    high = f_ap(50.0, 0.5, path=LambPath.ANALYTIC_HIGH_FREQ).value
    assert high == pytest.approx(0.25 - f_im(0.5) / (2 * math.pi**2 * 50.0), rel=1e-15)
    assert abs(contour - high) < 1e-3
    # the remainder is the next order, 1/(8 nu0^2) at the midplane
    assert contour - high == pytest.approx(1 / (8 * 50.0**2), rel=2e-2)


@pytest.mark.parametrize("nu0", [0.01, 0.1, 1.0, 10.0])
@pytest.mark.parametrize("x", [0.3, 0.5, 0.7])
def test_smooth_cutoff_paths_agree_with_regularized_limits(nu0, x):
    assert abs(g_a2(LOGISTIC_10).value - g_a2().value) < 1e-2
    assert abs(f_a2(x, LOGISTIC_10).value - f_a2(x).value) < 1e-2
    assert abs(g_ap(nu0, LOGISTIC_10).value - g_ap(nu0).value) < 1e-2
    assert abs(f_ap(nu0, x, LOGISTIC_10).value - f_ap(nu0, x).value) < 1e-2


def test_f_ap_sharp_cutoff_runs():
    res = f_ap(1.0, 0.5, CutoffSpec.sharp(30.5))
    assert res.path is LambPath.NUMERIC_SHARP
    assert abs(res.value - f_ap(1.0, 0.5).value) < 0.1


def test_f_A_static_midplane():
    assert f_A(0.0, 0.5) == pytest.approx(2 * math.pi / 3, abs=1e-12)
    assert f_A(1e-9, 0.5) == pytest.approx(2 * math.pi / 3, abs=1e-6)


def test_f_A_wall_scaling():
    x = 0.02
    assert f_A(0.0, x) * x**2 * 2 * math.pi == pytest.approx(1.0, rel=5e-2)


def test_f_A_decreases_with_frequency():
    values = [f_A(nu, 0.5) for nu in np.linspace(0.0, 2.0, 41)]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_f_A_positive_on_grid():
    for x in np.linspace(0.05, 0.95, 19):
        for nu in np.concatenate(([0.0], np.geomspace(1e-3, 10, 12))):
            assert f_A(float(nu), float(x)) > 0


def test_f_A_is_sum_of_lamb_functions():
    nu, x = 0.7, 0.35
    parts = g_a2().value + f_a2(x).value - g_ap(nu).value - f_ap(nu, x).value
    assert f_A(nu, x) == pytest.approx(2 * math.pi * parts, rel=1e-10)


def test_delta_e_A_static_limit():
    m = DipoleModel(1.0, 0.1, 1e-4)
    g = PlateGeometry(10.0, 0.5)
    expected = ALPHA * m.hbar_omega0_over_vc * (m.a0 / g.d) ** 2 * 2 * math.pi / 3
    assert delta_e_A(g, m) == pytest.approx(expected, rel=1e-4)
    # doubling the spacing in the static regime divides the shift by four
    assert delta_e_A(PlateGeometry(20.0, 0.5), m) / delta_e_A(g, m) == pytest.approx(0.25, rel=1e-3)


def test_bound_ratio_is_shift_ratio():
    m = DipoleModel(1.0, 0.1, 3.0)
    g = PlateGeometry(40.0, 0.35)
    assert bound_ratio(g, m) == pytest.approx(delta_e_A(g, m) / abs(delta_e_im(g, m)), rel=1e-12)


def test_bound_ratio_regression_fixture():
    m = DipoleModel(1.0, 0.1, 1.0)
    assert bound_ratio(geometry_for(1.0, 0.5, m), m) == pytest.approx(0.5798412765103873, rel=1e-9)
    assert bound_ratio(geometry_for(1e-6, 0.5, m), m) < 1e-5


@settings(max_examples=40, deadline=None)
@given(st.floats(0.05, 0.95), st.floats(0.0, 10.0))
def test_bound_ratio_below_one(x, nu0):
    assert math.pi * nu0 * f_A(nu0, x) / f_im(x) < 1


def test_invalid_inputs():
    with pytest.raises(ValueError):
        g_ap(0.0)
    with pytest.raises(ValueError):
        f_ap(1.0, 1.2)
    with pytest.raises(ValueError):
        f_A(-0.1, 0.5)
    with pytest.raises(ValueError):
        f_a2(0.5, CutoffSpec.none())
