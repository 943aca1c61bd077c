"""Tables behind each published figure, one column per plotted curve.

Multi-panel figures are emitted in long form with a ``panel`` column and a
shared ``abscissa`` column; comment lines name the abscissa of each panel and
flag parameter choices that the figure captions leave open.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .dipole import DipoleModel
from .numerics import CutoffSpec
from .plates_static import DipoleDisplacement, PlateGeometry, f_im, v_im_parts, v_im_quadratic
from .plates_total import sign_boundary_grid
from .sphere import f_p
from .transverse import (
    f_A,
    f_a2,
    f_ap,
    f_ap_high_freq,
    g_a2,
    g_ap,
    g_ap_high_freq,
    g_ap_low_freq,
)

FIGURES = ("fig2a", "fig2b", "fig2c", "fig3b", "sm_g1", "sm_f1", "sm_gm", "sm_fm", "sm_vim", "sm_FA")


@dataclass
class Table:
    columns: list
    rows: list
    comments: list = field(default_factory=list)


def parallel_map(fn, items, jobs=1):
    """Order-preserving map over ``items`` on up to ``jobs`` threads."""
    items = list(items)
    if jobs <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _grid(lo, hi, step):
    return [round(v, 10) for v in np.arange(lo, hi + step / 2, step)]


def fig2a(jobs=1):
    xs = _grid(0.05, 0.95, 0.01)
    rows = parallel_map(lambda x: [x, f_im(x), f_A(0.0, x)], xs, jobs)
    return Table(["z0_over_d", "F_im", "F_A_nu0_0"], rows)


def fig2b(jobs=1):
    nus = _grid(0.02, 3.0, 0.02)
    rows = parallel_map(lambda nu: [nu, f_A(nu, 0.5), f_A(nu, 0.2)], nus, jobs)
    note = "assumption: the two positions z0/d = 0.5 and 0.2 are our reading of the caption"
    return Table(["omega0_over_omega_perp", "F_A_z0_0.5", "F_A_z0_0.2"], rows, [note])


def fig2c(jobs=1):
    ds = np.geomspace(2, 100, 40)
    zs = np.geomspace(0.1, 300, 40)
    result = sign_boundary_grid(ds, zs, jobs=jobs)
    rows = [
        [p.d_over_a0, p.z_over_zvac, p.breakdown.e_im, p.breakdown.e_A, p.breakdown.e_cav, p.breakdown.total, p.sign]
        for p in result.points
    ]
    comments = [
        "fixed: z0/d = 0.5, hbar omega0 = V_C/2, q = e, omega_c = 10 omega0; energies in V_C",
        "assumption: axis ranges d/a0 in [2, 100] and Z/Z_vac in [0.1, 300], log spaced",
    ]
    return Table(["d_over_a0", "Z_over_Zvac", "e_im", "e_A", "e_cav", "total", "sign"], rows, comments)


def fig3b(jobs=1):
    ys = (0.1, 0.5, 1.0)
    limits = {y: f_p(1.0, y) for y in ys}
    rows = parallel_map(lambda n: [n] + [f_p(1.0, y, n) / limits[y] for y in ys], range(1, 101), jobs)
    note = "assumption: z0/R in {0.1, 0.5, 1} stands in for the unlabelled gaps; omega0/omega_P = 1"
    return Table(["ell_max"] + [f"F_P_ratio_y_{y:g}" for y in ys], rows, [note])


def sm_g1(jobs=1):
    lams = _grid(1.0, 30.0, 0.1)

    def row(lam):
        return [lam, g_a2(CutoffSpec.sharp(lam)).value, g_a2(CutoffSpec.logistic(lam)).value, g_a2().value]

    note = "sharp cutoff: mode sum runs to floor(Lambda)"
    return Table(["lambda", "g_A2_sharp", "g_A2_logistic", "g_A2_analytic"], parallel_map(row, lams, jobs), [note])


def _long_form(panels, curves, jobs):
    """Rows ``[panel, abscissa, *curves(panel_args, abscissa)]`` for every panel."""
    work = [(name, args, a) for name, args, values in panels for a in values]
    return parallel_map(lambda w: [w[0], w[2]] + curves(w[1], w[2]), work, jobs)


def sm_f1(jobs=1):
    lams = _grid(1.0, 30.0, 0.25)
    xs = _grid(0.05, 0.95, 0.01)
    panels = [
        ("a", ("lambda", 0.5), lams),
        ("c", ("lambda", 0.2), lams),
        ("e", ("x", 10.0), xs),
        ("g", ("x", 50.0), xs),
    ]

    def curves(args, a):
        kind, fixed = args
        lam, x = (a, fixed) if kind == "lambda" else (fixed, a)
        return [f_a2(x, CutoffSpec.sharp(lam)).value, f_a2(x, CutoffSpec.logistic(lam)).value, f_a2(x).value]

    comments = [
        "panels a, c: abscissa is Lambda at z0/d = 0.5 and 0.2",
        "panels e, g: abscissa is z0/d at Lambda = 10 and 50",
    ]
    columns = ["panel", "abscissa", "f_A2_sharp", "f_A2_logistic", "f_A2_analytic"]
    return Table(columns, _long_form(panels, curves, jobs), comments)


def sm_gm(jobs=1):
    lams = _grid(1.0, 30.0, 0.25)
    nus = [float(v) for v in np.geomspace(0.01, 10, 61)]
    panels = [("a", ("nu0", 10.0), nus), ("c", ("lambda", 10.0), lams), ("e", ("lambda", 0.01), lams)]

    def curves(args, a):
        kind, fixed = args
        nu, lam = (a, fixed) if kind == "nu0" else (fixed, a)
        return [
            g_ap(nu, CutoffSpec.sharp(lam)).value,
            g_ap(nu, CutoffSpec.logistic(lam)).value,
            g_ap_low_freq(nu),
            g_ap_high_freq(nu),
        ]

    comments = [
        "panel a: abscissa is nu0 at Lambda = 10",
        "panels c, e: abscissa is Lambda at nu0 = 10 and 0.01",
    ]
    columns = ["panel", "abscissa", "g_Ap_sharp", "g_Ap_logistic", "g_Ap_low_freq", "g_Ap_high_freq"]
    return Table(columns, _long_form(panels, curves, jobs), comments)


def sm_fm(jobs=1):
    lams = _grid(1.0, 30.0, 0.25)
    nus = [float(v) for v in np.geomspace(0.01, 10, 61)]
    xs = _grid(0.05, 0.95, 0.01)
    panels = [
        ("a", ("lambda", 10.0, 0.5), lams),
        ("c", ("lambda", 10.0, 0.2), lams),
        ("e", ("nu0", 10.0, 0.5), nus),
        ("g", ("x", 10.0, 50.0), xs),
    ]

    def curves(args, a):
        kind = args[0]
        if kind == "lambda":
            nu, x, lam = args[1], args[2], a
        elif kind == "nu0":
            nu, lam, x = a, args[1], args[2]
        else:
            nu, lam, x = args[1], args[2], a
        return [
            f_ap(nu, x, CutoffSpec.sharp(lam)).value,
            f_ap(nu, x, CutoffSpec.logistic(lam)).value,
            f_ap(nu, x).value,
            nu / 4,
            f_ap_high_freq(nu, x),
        ]

    comments = [
        "panels a, c: abscissa is Lambda at nu0 = 10, z0/d = 0.5 and 0.2",
        "panel e: abscissa is nu0 at Lambda = 10, z0/d = 0.5",
        "panel g: abscissa is z0/d at nu0 = 10, Lambda = 50",
    ]
    columns = ["panel", "abscissa", "f_Ap_sharp", "f_Ap_logistic", "f_Ap_contour", "f_Ap_low_freq", "f_Ap_high_freq"]
    return Table(columns, _long_form(panels, curves, jobs), comments)


def sm_vim(jobs=1):
    m = DipoleModel(1.0, 1.0, 1.0)
    g = PlateGeometry(10.0, 0.2)
    offsets = _grid(-1.5, 1.5, 0.05)
    panels = [("a", "z", offsets), ("b", "x", offsets)]

    def curves(axis, a):
        r = DipoleDisplacement(z_d=a) if axis == "z" else DipoleDisplacement(x_d=a)
        plus, minus = v_im_parts(g, r, m)
        return [plus, minus, plus + minus, v_im_quadratic(g, r, m)]

    comments = [
        "d = 10 a0, z0/d = 0.2; energies in V_C",
        "panel a: abscissa is z_d/a0 at x_d = y_d = 0; panel b: abscissa is x_d/a0 at y_d = z_d = 0",
        "assumption: displacement range [-1.5, 1.5] a0",
    ]
    columns = ["panel", "abscissa", "V_im_plus", "V_im_minus", "V_im", "V_im_quadratic"]
    return Table(columns, _long_form(panels, curves, jobs), comments)


def sm_FA(jobs=1):
    xs = _grid(0.05, 0.95, 0.05)
    nus = [float(v) for v in np.geomspace(0.01, 10, 13)]
    work = [(x, nu) for x in xs for nu in nus]

    def row(w):
        x, nu = w
        value = f_A(nu, x)
        return [x, nu, value, math.pi * nu * value / f_im(x)]

    return Table(["z0_over_d", "nu0", "F_A", "bound_ratio"], parallel_map(row, work, jobs))


def figure_data(name, jobs=1):
    if name not in FIGURES:
        raise ValueError(f"unknown figure {name!r}; choose from {', '.join(FIGURES)}")
    return globals()[name](jobs=jobs)
