"""Total ground-state shift of a dipole between plates coupled to an LC mode.

The shift is the sum of the electrostatic image term, the transverse-mode
term and the second-order shift from the longitudinal LC resonance whose
coupling is set by the circuit impedance ``Z``.
"""
from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .dipole import ALPHA, DipoleModel, EnergyUnit, ReducedUnits, nu0
from .plates_static import ImageMode, PlateGeometry, delta_e_im
from .transverse import delta_e_A

ETA_LIMIT = 5.0


@dataclass(frozen=True)
class PlateSetup:
    """Plates, dipole and LC circuit.

    ``omega_c`` is the LC resonance energy in eV and defaults to ten times
    the dipole transition energy.
    """

    geometry: PlateGeometry
    dipole: DipoleModel
    z_over_zvac: float
    omega_c: float | None = None

    def __post_init__(self):
        if not (self.z_over_zvac > 0 and math.isfinite(self.z_over_zvac)):
            raise ValueError(f"impedance ratio must be positive, got {self.z_over_zvac!r}")
        if self.omega_c is None:
            object.__setattr__(self, "omega_c", 10 * self.dipole.omega0)
        elif not (self.omega_c > 0 and math.isfinite(self.omega_c)):
            raise ValueError(f"LC frequency must be positive, got {self.omega_c!r}")
        if eta(self) >= ETA_LIMIT:
            raise ValueError(f"coupling eta = {eta(self):.3g} exceeds the sanity limit {ETA_LIMIT}")


@dataclass(frozen=True)
class ShiftBreakdown:
    """Contributions to the ground-state shift in units of ``V_C``."""

    e_im: float
    e_A: float
    e_cav: float
    units: ReducedUnits
    total: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "total", math.fsum((self.e_im, self.e_A, self.e_cav)))

    def in_units(self, unit):
        """``{"e_im", "e_A", "e_cav", "total"}`` expressed in ``unit``."""
        return {
            name: self.units.convert(getattr(self, name), EnergyUnit.COULOMB_VC, unit)
            for name in ("e_im", "e_A", "e_cav", "total")
        }


def eta(s):
    """Dimensionless LC coupling ``(q a0/(e d)) sqrt(2 pi alpha Z/Z_vac)``."""
    return s.dipole.q_over_e * s.dipole.a0 / s.geometry.d * math.sqrt(2 * math.pi * ALPHA * s.z_over_zvac)


class CavityMode(enum.Enum):
    EXACT = "exact"
    LOW_FREQ_APPROX = "low_freq_approx"


def delta_e_cav(s, mode=CavityMode.EXACT):
    """Second-order shift from the LC mode in units of ``V_C``.

    ``EXACT`` is ``hbar omega0 eta^2 omega_c/(omega_c + omega0)``; the
    low-frequency approximation drops the last factor, i.e. ``F_cav = 2 pi``.
    """
    base = s.dipole.hbar_omega0_over_vc * eta(s) ** 2
    if mode is CavityMode.LOW_FREQ_APPROX:
        return base
    return base * s.omega_c / (s.omega_c + s.dipole.omega0)


def total_shift(s):
    e_im = delta_e_im(s.geometry, s.dipole, ImageMode.ANALYTIC)
    e_a = delta_e_A(s.geometry, s.dipole)
    return ShiftBreakdown(e_im, e_a, delta_e_cav(s), ReducedUnits.of(s.dipole))


@dataclass(frozen=True)
class GridPoint:
    d_over_a0: float
    z_over_zvac: float
    breakdown: ShiftBreakdown
    eta: float
    nu0: float

    @property
    def sign(self):
        return (self.breakdown.total > 0) - (self.breakdown.total < 0)


@dataclass(frozen=True)
class SignBoundary:
    """Grid evaluation and the zero contour ``Z*(d)`` (``None`` if out of range)."""

    points: list
    contour: list


def _setups(d_over_a0, z_over_zvac, z0_over_d, hbar_omega0_over_vc, q_over_e, a0, omega_c_ratio):
    m = DipoleModel.from_coulomb_ratio(hbar_omega0_over_vc, q_over_e, a0)
    g = PlateGeometry(d_over_a0 * a0, z0_over_d)
    return g, m, PlateSetup(g, m, z_over_zvac, omega_c_ratio * m.omega0)


def zero_impedance(d_over_a0, z_range, z0_over_d=0.5, hbar_omega0_over_vc=0.5, q_over_e=1.0, a0=0.1,
                   omega_c_ratio=10.0, rtol=1e-3):
    """Impedance ratio where the total shift changes sign, by bisection in ``Z``.

    Returns ``None`` when the total does not change sign inside ``z_range``.
    """
    lo, hi = min(z_range), max(z_range)
    g, m, _ = _setups(d_over_a0, lo, z0_over_d, hbar_omega0_over_vc, q_over_e, a0, omega_c_ratio)
    static = delta_e_im(g, m) + delta_e_A(g, m)

    def total(z):
        return static + delta_e_cav(PlateSetup(g, m, z, omega_c_ratio * m.omega0))

    if total(lo) > 0 or total(hi) < 0:
        return None
    while hi - lo > rtol * lo:
        mid = math.sqrt(lo * hi)
        if total(mid) < 0:
            lo = mid
        else:
            hi = mid
    return math.sqrt(lo * hi)


def sign_boundary_grid(d_over_a0_values, z_values, z0_over_d=0.5, hbar_omega0_over_vc=0.5, q_over_e=1.0,
                       a0=0.1, omega_c_ratio=10.0, jobs=1):
    """Evaluate the total shift on a ``d x Z`` grid and locate its zero contour.

    Defaults are the slice ``z0/d = 0.5``, ``hbar omega0 = V_C/2``, ``q = e``.
    Rows come back in input order (``d`` outer, ``Z`` inner) regardless of
    ``jobs``.
    """
    d_values = list(d_over_a0_values)
    z_values = list(z_values)
    for seq in (d_values, z_values):
        if any(v <= 0 for v in seq) or any(b <= a for a, b in zip(seq, seq[1:])):
            raise ValueError("grid ranges must be positive and increasing")
    fixed = (z0_over_d, hbar_omega0_over_vc, q_over_e, a0, omega_c_ratio)

    def column(d):
        g, m, _ = _setups(d, z_values[0], *fixed)
        e_im = delta_e_im(g, m)
        e_a = delta_e_A(g, m)
        units = ReducedUnits.of(m)
        frequency = nu0(g.d, m)
        rows = []
        for z in z_values:
            s = PlateSetup(g, m, z, omega_c_ratio * m.omega0)
            rows.append(GridPoint(d, z, ShiftBreakdown(e_im, e_a, delta_e_cav(s), units), eta(s), frequency))
        return rows, zero_impedance(d, z_values, *fixed)

    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        results = list(pool.map(column, d_values))
    points = [p for rows, _ in results for p in rows]
    contour = [(d, z_star) for d, (_, z_star) in zip(d_values, results)]
    return SignBoundary(points, contour)
