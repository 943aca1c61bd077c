"""Dipole next to a plasmonic nanosphere.

The sphere supports surface plasmons ``omega_l = omega_P sqrt(l/(2l+1))``,
``l >= 1``. The dipole is restricted to motion along the axis through the
sphere centre, at distance ``z0`` from the surface. Mode sums up to
``ell_max = math.inf`` are summed adaptively with a geometric tail bound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dipole import ALPHA, HBAR_C, DipoleModel, ReducedUnits
from .plates_total import ShiftBreakdown

_BLOCK = 2048
_TAIL_TOL = 1e-12


@dataclass(frozen=True)
class SphereSetup:
    """Sphere radius ``R`` and gap ``z0`` in nm, plasma energy ``omega_P`` in eV."""

    R: float
    z0: float
    omega_P: float
    dipole: DipoleModel
    ell_max: float = math.inf

    def __post_init__(self):
        for name in ("R", "z0", "omega_P"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"SphereSetup.{name} must be positive and finite, got {value!r}")
        _check_ell_max(self.ell_max)

    @property
    def x(self):
        """``omega0/omega_P``."""
        return self.dipole.omega0 / self.omega_P

    @property
    def y(self):
        """``z0/R``."""
        return self.z0 / self.R


@dataclass(frozen=True)
class PlasmonMode:
    ell: int
    omega: float
    g: float


def _check_ell_max(ell_max):
    if ell_max != math.inf and not (ell_max >= 1 and float(ell_max).is_integer()):
        raise ValueError(f"ell_max must be a positive integer or math.inf, got {ell_max!r}")


def omega_ell(ell, omega_P):
    if ell < 1:
        raise ValueError("plasmon modes start at ell = 1")
    return omega_P * math.sqrt(ell / (2 * ell + 1))


def eta_p(s):
    """``g_P/omega_P = (q a0/(e R)) sqrt(2 pi alpha Z_P/Z_vac)``."""
    return s.dipole.q_over_e * s.dipole.a0 / s.R * math.sqrt(2 * math.pi * ALPHA * impedance_ratio(s))


def impedance_ratio(s):
    """``Z_P/Z_vac = c/(pi R omega_P)`` of the fundamental plasmon."""
    return HBAR_C / (math.pi * s.R * s.omega_P)


def effective_impedance_ratio(s):
    """``Z_eff/Z_vac = c/(pi z0 omega_P)``; the gap replaces the radius."""
    return HBAR_C / (math.pi * s.z0 * s.omega_P)


def g_ell(ell, s):
    """Coupling ``hbar g_l`` (eV) of the dipole to plasmon ``l``."""
    if ell < 1:
        raise ValueError("plasmon modes start at ell = 1")
    geometric = (s.R / (s.R + s.z0)) ** (ell + 2)
    return eta_p(s) * s.omega_P * (ell + 1) / 2 * (ell / (2 * ell + 1)) ** 0.25 * geometric


def plasmon_modes(s, count):
    return [PlasmonMode(ell, omega_ell(ell, s.omega_P), g_ell(ell, s)) for ell in range(1, count + 1)]


def _adaptive_sum(block_terms, ratio_bound, ell_max, first=1):
    """Sum ``block_terms(ell_array)`` from ``ell = first`` up to ``ell_max``.

    For an infinite ``ell_max`` the loop stops once the tail bound
    ``last/(1 - rho)`` falls below ``_TAIL_TOL`` times the running sum, with
    ``rho`` a bound on the ratio of consecutive terms past the block.
    """
    total = 0.0
    start = first
    if start > ell_max:
        return total
    while True:
        stop = start + _BLOCK if ell_max == math.inf else min(start + _BLOCK, int(ell_max) + 1)
        ells = np.arange(start, stop, dtype=float)
        terms = block_terms(ells)
        total += math.fsum(terms)
        if ell_max != math.inf and stop > ell_max:
            return total
        rho = ratio_bound(stop - 1)
        if rho < 1 and terms[-1] / (1 - rho) < _TAIL_TOL * max(total, 1e-300):
            return total
        start = stop


def f_im_sp(z0_over_R, ell_max=math.inf):
    """Image-potential scaling function of the sphere; tends to 1/8 for small gaps.

    ``(x^3/2) sum_{l=1}^{ell_max} (l+1)^2 (1+x)^-(2l+4)``; the infinite sum has
    the closed form ``(x^3/2) q^2 [(1+q)/(1-q)^3 - 1]`` with ``q = (1+x)^-2``.
    """
    x = z0_over_R
    if not x > 0:
        raise ValueError(f"z0/R must be positive, got {x!r}")
    _check_ell_max(ell_max)
    q = (1 + x) ** -2
    if ell_max == math.inf:
        one_minus_q = x * (2 + x) * q
        return 0.5 * x**3 * q * q * ((1 + q) / one_minus_q**3 - 1)
    ells = np.arange(1, int(ell_max) + 1, dtype=float)
    return 0.5 * x**3 * math.fsum((ells + 1) ** 2 * q ** (ells + 2))


def delta_e_im_sphere(s):
    """Electrostatic shift ``-(a0/z0)^3 F_im^sp(z0/R)`` in units of ``V_C``.

    The image energy is quadratic in the axial displacement, so the ground
    state average replaces ``z_d^2`` by ``a0^2``.
    """
    return -((s.dipole.a0 / s.z0) ** 3) * f_im_sp(s.y)


def _fp_terms(x, q):
    def terms(ells):
        sigma = np.sqrt((2 * ells + 1) / ells)
        return (ells + 1) ** 2 * sigma / (1 + x * sigma) * q ** (ells + 2)
    return terms


def _ratio_bound(q):
    # consecutive-term ratio past ell is below ((ell+2)/(ell+1))^2 q; the sigma factor only decreases
    return lambda ell: ((ell + 2) / (ell + 1)) ** 2 * q


def f_p(x, y, ell_max=math.inf):
    """Plasmon vacuum-shift function ``F_P(omega0/omega_P, z0/R)``.

    ``(pi y^3/2) sum_l (l+1)^2 s_l/(1 + x s_l) (1+y)^-(2l+4)`` with
    ``s_l = sqrt((2l+1)/l)``. Tends to ``pi/sqrt(32)`` for ``x, y -> 0``.
    """
    if not x >= 0:
        raise ValueError(f"omega0/omega_P must be non-negative, got {x!r}")
    if not y > 0:
        raise ValueError(f"z0/R must be positive, got {y!r}")
    _check_ell_max(ell_max)
    q = (1 + y) ** -2
    return 0.5 * math.pi * y**3 * _adaptive_sum(_fp_terms(x, q), _ratio_bound(q), ell_max)


def delta_e_p(s):
    """Shift from the dynamical plasmon modes in units of ``V_C``.

    ``alpha hbar omega0 (q a0/(e z0))^2 (Z_eff/Z_vac) F_P``.
    """
    m = s.dipole
    prefactor = ALPHA * m.hbar_omega0_over_vc * (m.q_over_e * m.a0 / s.z0) ** 2
    return prefactor * effective_impedance_ratio(s) * f_p(s.x, s.y, s.ell_max)


def delta_e_p_direct(s):
    """Second-order mode sum ``sum_l hbar g_l^2 omega0/(omega_l (omega_l + omega0))`` in units of ``V_C``."""
    g_p = eta_p(s) * s.omega_P
    w0 = s.dipole.omega0
    q = (s.R / (s.R + s.z0)) ** 2

    def terms(ells):
        w = s.omega_P * np.sqrt(ells / (2 * ells + 1))
        g = g_p * (ells + 1) / 2 * (ells / (2 * ells + 1)) ** 0.25 * q ** (ells / 2 + 1)
        return g * g * w0 / (w * (w + w0))

    return _adaptive_sum(terms, _ratio_bound(q), s.ell_max) / s.dipole.vc


def p2_sum(s, first, last=math.inf):
    """``sum_{l=first}^{last} hbar g_l^2/omega_l`` in units of ``V_C``, at ``mu = 1``.

    ``mu`` is the axial displacement in units of ``a0``; summed over all modes
    this equals ``-Delta E_im`` of the sphere.
    """
    g_p = eta_p(s) * s.omega_P
    q = (s.R / (s.R + s.z0)) ** 2

    def terms(ells):
        w = s.omega_P * np.sqrt(ells / (2 * ells + 1))
        g = g_p * (ells + 1) / 2 * (ells / (2 * ells + 1)) ** 0.25 * q ** (ells / 2 + 1)
        return g * g / w

    return _adaptive_sum(terms, _ratio_bound(q), last, first=first) / s.dipole.vc


def sphere_total(s):
    """Total shift; transverse corrections are neglected, so ``e_A`` is zero."""
    return ShiftBreakdown(delta_e_im_sphere(s), 0.0, delta_e_p(s), ReducedUnits.of(s.dipole))
