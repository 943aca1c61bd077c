import math

import pytest

from vacshift.dipole import ALPHA, HBAR_C, DipoleModel, EnergyUnit, ReducedUnits, coulomb_scale, nu0


def test_coulomb_scale_of_unit_dipole():
    # e^2/(4 pi eps0) = alpha hbar c = 1.44 eV nm
    m = DipoleModel(1.0, 0.1, 1.0)
    assert coulomb_scale(m) == pytest.approx(14.399645, rel=1e-6)
    assert coulomb_scale(DipoleModel(2.0, 0.1, 1.0)) == pytest.approx(4 * coulomb_scale(m))


def test_from_coulomb_ratio_round_trip():
    m = DipoleModel.from_coulomb_ratio(0.5, q_over_e=1.0, a0=0.1)
    assert m.hbar_omega0_over_vc == pytest.approx(0.5, rel=1e-15)
    assert m.omega0 == pytest.approx(0.5 * ALPHA * HBAR_C / 0.1)


def test_nu0_is_frequency_over_fundamental_mode():
    m = DipoleModel(1.0, 0.1, 2.0)
    # pi c/d as an energy is pi hbar c/d
    d = 250.0
    assert nu0(d, m) == pytest.approx(2.0 / (math.pi * HBAR_C / d))
    with pytest.raises(ValueError):
        nu0(0.0, m)


@pytest.mark.parametrize("field,value", [("q_over_e", 0.0), ("a0", -1.0), ("omega0", math.inf)])
def test_dipole_validation(field, value):
    kwargs = {"q_over_e": 1.0, "a0": 0.1, "omega0": 1.0, field: value}
    with pytest.raises(ValueError):
        DipoleModel(**kwargs)


def test_reduced_unit_conversion():
    u = ReducedUnits.of(DipoleModel(1.0, 0.1, 0.72))
    x = u.convert(3.0, EnergyUnit.COULOMB_VC, EnergyUnit.HBAR_OMEGA0)
    assert u.convert(x, EnergyUnit.HBAR_OMEGA0, EnergyUnit.COULOMB_VC) == pytest.approx(3.0, rel=1e-15)
    assert x == pytest.approx(3.0 * u.vc / 0.72)
