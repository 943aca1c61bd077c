"""Image-charge electrostatics of a dipole between two perfect plates.

The plates sit at ``z = 0`` and ``z = d``. The positive charge is fixed at
height ``z0`` and the negative charge is displaced from it by
``(x_d, y_d, z_d)``. Energies are returned in units of ``V_C``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .numerics import gauss_hermite_average, polygamma2, richardson_series, zeta3

_EDGE = 1e-6


@dataclass(frozen=True)
class PlateGeometry:
    """Plate spacing ``d`` (nm) and fractional height of the positive charge."""

    d: float
    z0_over_d: float

    def __post_init__(self):
        if not (self.d > 0 and math.isfinite(self.d)):
            raise ValueError(f"plate spacing must be positive, got {self.d!r}")
        if not (_EDGE < self.z0_over_d < 1 - _EDGE):
            raise ValueError(f"z0/d must lie inside (0, 1) away from the plates, got {self.z0_over_d!r}")

    @property
    def z0(self):
        return self.z0_over_d * self.d


@dataclass(frozen=True)
class DipoleDisplacement:
    """Displacement (nm) of the negative charge from the positive one."""

    x_d: float = 0.0
    y_d: float = 0.0
    z_d: float = 0.0

    def check(self, g):
        if not 0.0 < g.z0 + self.z_d < g.d:
            raise ValueError("displaced charge must stay strictly between the plates")


class ImageMode(enum.Enum):
    ANALYTIC = "analytic"
    NUMERIC_FULL = "numeric_full"


def _v_minus(a, b):
    """Negative-charge part of the image energy, units ``q^2/(4 pi eps0 d)``.

    ``a = z0/d`` and ``b = (z0 + z_d)/d``; ``b`` may be an array.
    """
    b = np.asarray(b, dtype=float)

    def block(lo, hi):
        n = np.arange(lo, hi, dtype=float)
        head = 0.5 * a * a / (n * (n * n - a * a))
        bb = b[..., None] ** 2
        return np.sum(head) + np.sum(0.5 * bb / (n * (n * n - bb)), axis=-1)

    paired = richardson_series(block, tol=1e-14)
    return -(1 / (4 * a) + 1 / (4 * b) + paired)


def _v_plus(a, rho, z):
    """Positive-charge-image part of the image energy, same units as ``_v_minus``."""
    rho2 = np.asarray(rho, dtype=float) ** 2
    z = np.asarray(z, dtype=float)
    c = 2 * a + z

    def inv(t):
        return 1.0 / np.sqrt(rho2[..., None] + t * t)

    def block(lo, hi):
        total = 0.0
        # chunk to bound memory when averaging over many quadrature nodes
        for start in range(lo, hi, 4096):
            n = 2.0 * np.arange(start, min(hi, start + 4096), dtype=float)
            zz = z[..., None]
            cc = c[..., None]
            total = total + np.sum(inv(zz + n) + inv(zz - n) - inv(cc + n) - inv(cc - n), axis=-1)
        return total

    paired = richardson_series(block, tol=1e-14)
    return -(paired - 1.0 / np.sqrt(rho2 + c * c))


def _reduced_parts(a, x, y, z):
    rho = np.hypot(x, y)
    return _v_plus(a, rho, z), _v_minus(a, a + np.asarray(z, dtype=float))


def v_im_parts(g, r, m):
    """``(V_im^+, V_im^-)`` for a single configuration, in units of ``V_C``."""
    r.check(g)
    scale = m.a0 / g.d
    plus, minus = _reduced_parts(g.z0_over_d, r.x_d / g.d, r.y_d / g.d, r.z_d / g.d)
    return float(plus) * scale, float(minus) * scale


def v_im_full(g, r, m):
    """Full image-charge energy of the dipole in units of ``V_C``.

    Both image series are summed in paired form (each bracket decays like
    ``1/n^3``) and extrapolated from doubling partial sums.
    """
    plus, minus = v_im_parts(g, r, m)
    return plus + minus


def _v_full_array(g, x, y, z):
    """Vectorized ``v_im_full`` in units of ``q^2/(4 pi eps0 d)``; inputs in nm."""
    plus, minus = _reduced_parts(g.z0_over_d, x / g.d, y / g.d, z / g.d)
    return plus + minus


def _bracket(x):
    return 2 / x**3 - polygamma2(1 - x) - polygamma2(1 + x)


def quadratic_coefficients(z0_over_d):
    """Coefficients ``(c_par, c_z)`` with ``V2 = -(q^2/4 pi eps0 d^3)(c_par rho^2 + c_z z^2)``."""
    b = _bracket(z0_over_d)
    return (b - 4 * zeta3()) / 32, (b + 4 * zeta3()) / 16


def v_im_quadratic(g, r, m):
    """Second-order expansion of the image energy, in units of ``V_C``."""
    c_par, c_z = quadratic_coefficients(g.z0_over_d)
    rho2 = r.x_d**2 + r.y_d**2
    return -(m.a0 / g.d**3) * (c_par * rho2 + c_z * r.z_d**2)


def f_im(x):
    """Electrostatic scaling function ``F_im(z0/d)``; minimal (about 4.2072) at the midplane."""
    if not 0 < x < 1:
        raise ValueError(f"F_im is defined for 0 < x < 1, got {x!r}")
    return _bracket(x) / 8


def delta_e_im(g, m, mode=ImageMode.ANALYTIC, order=20):
    """Electrostatic ground-state shift in units of ``V_C``.

    ``ANALYTIC`` averages the quadratic expansion over the ground state.
    ``NUMERIC_FULL`` averages the full image energy with a tensor Gauss-Hermite
    rule; nodes that fall outside the plates are discarded and the remaining
    weights renormalized, which is only meaningful for ``d >= 5 a0``.
    """
    if mode is ImageMode.ANALYTIC:
        return -((m.a0 / g.d) ** 3) * f_im(g.z0_over_d)
    if g.d < 5 * m.a0:
        raise ValueError("full numeric average needs d >= 5 a0")

    def inside(x, y, z):
        return (g.z0 + z > 0) & (g.z0 + z < g.d)

    avg = gauss_hermite_average(lambda x, y, z: _v_full_array(g, x, y, z), m.a0, order, accept=inside)
    return avg * m.a0 / g.d
