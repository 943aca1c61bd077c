"""Harmonic dipole model, physical constants and reduced energy units.

Lengths are in nanometres and energies in electronvolts throughout the
package; a frequency ``omega`` is always carried as the energy ``hbar*omega``.
Every energy returned by the physics modules is expressed in units of the
Coulomb scale ``V_C = q^2 / (4 pi eps0 a0)`` of the dipole.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

C_LIGHT = 299_792_458.0  # m/s
ALPHA = 1 / 137.035999084
HBAR_C = 197.3269804  # eV nm


@dataclass(frozen=True)
class DipoleModel:
    """Isotropic harmonic dipole.

    Parameters
    ----------
    q_over_e : float
        Charge of the dipole in units of the elementary charge.
    a0 : float
        Characteristic size ``|<0|z_d|1>|`` in nm.
    omega0 : float
        Transition energy ``hbar*omega0`` in eV.
    """

    q_over_e: float
    a0: float
    omega0: float

    def __post_init__(self):
        for name in ("q_over_e", "a0", "omega0"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"DipoleModel.{name} must be positive and finite, got {value!r}")

    @classmethod
    def from_coulomb_ratio(cls, hbar_omega0_over_vc, q_over_e=1.0, a0=0.1):
        """Build a dipole whose transition energy is a fixed fraction of ``V_C``."""
        vc = q_over_e**2 * ALPHA * HBAR_C / a0
        return cls(q_over_e, a0, hbar_omega0_over_vc * vc)

    @property
    def vc(self):
        return coulomb_scale(self)

    @property
    def hbar_omega0_over_vc(self):
        return self.omega0 / coulomb_scale(self)


def coulomb_scale(m):
    """Coulomb energy ``q^2/(4 pi eps0 a0) = (q/e)^2 alpha hbar c / a0`` in eV."""
    return m.q_over_e**2 * ALPHA * HBAR_C / m.a0


def nu0(d, m):
    """Dipole frequency in units of the fundamental transverse mode ``pi c / d``."""
    if not d > 0:
        raise ValueError(f"plate spacing must be positive, got {d!r}")
    return m.omega0 * d / (math.pi * HBAR_C)


class EnergyUnit(enum.Enum):
    COULOMB_VC = "V_C"
    HBAR_OMEGA0 = "hbar_omega0"


@dataclass(frozen=True)
class ReducedUnits:
    """Conversion between the two reduced energy units of a dipole."""

    vc: float  # eV
    hbar_omega0: float  # eV

    @classmethod
    def of(cls, m):
        return cls(coulomb_scale(m), m.omega0)

    def factor(self, unit):
        """Size of one ``unit`` in eV."""
        return self.vc if unit is EnergyUnit.COULOMB_VC else self.hbar_omega0

    def convert(self, value, src, dst):
        if src is dst:
            return value
        return value * self.factor(src) / self.factor(dst)
