"""Vacuum-induced ground-state shifts of a dipole in strongly confining cavities.

Two geometries are covered: a dipole between two perfect plates, optionally
coupled to a lumped LC resonance, and a dipole next to a plasmonic
nanosphere. Lengths are in nm, energies in eV, and computed shifts are in
units of the dipole's Coulomb energy ``V_C``.
"""
from .dipole import ALPHA, HBAR_C, DipoleModel, EnergyUnit, ReducedUnits, coulomb_scale, nu0
from .numerics import CutoffSpec, NonConvergenceError, QuadratureError, VacshiftError
from .plates_static import DipoleDisplacement, ImageMode, PlateGeometry, delta_e_im, f_im, v_im_full
from .plates_total import PlateSetup, ShiftBreakdown, delta_e_cav, eta, sign_boundary_grid, total_shift
from .sphere import SphereSetup, delta_e_im_sphere, delta_e_p, f_im_sp, f_p, sphere_total
from .transverse import bound_ratio, delta_e_A, f_A

__all__ = [
    "ALPHA", "HBAR_C", "CutoffSpec", "DipoleDisplacement", "DipoleModel", "EnergyUnit", "ImageMode",
    "NonConvergenceError", "PlateGeometry", "PlateSetup", "QuadratureError", "ReducedUnits", "ShiftBreakdown",
    "SphereSetup", "VacshiftError", "bound_ratio", "coulomb_scale", "delta_e_A", "delta_e_cav", "delta_e_im",
    "delta_e_im_sphere", "delta_e_p", "eta", "f_A", "f_im", "f_im_sp", "f_p", "nu0", "sign_boundary_grid",
    "sphere_total", "total_shift", "v_im_full",
]
