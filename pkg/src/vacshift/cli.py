"""Command-line interface: single-point shifts, sweeps, figure tables, self-test.

Physical inputs are given in nm, eV and plain ratios. Output is CSV (header
always present, 17 significant digits, ``\\n`` line endings) or JSON Lines.

Exit codes: 0 success, 1 configuration error, 2 numerical non-convergence or
a failed self-test check.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import figures
from .dipole import DipoleModel, EnergyUnit, nu0
from .numerics import CutoffSpec, NonConvergenceError
from .plates_static import PlateGeometry, f_im
from .plates_total import PlateSetup, eta, sign_boundary_grid, total_shift
from .sphere import (
    SphereSetup,
    delta_e_im_sphere,
    delta_e_p,
    effective_impedance_ratio,
    f_im_sp,
    f_p,
)
from .transverse import bound_ratio, f_A, g_a2

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2

# defaults of every configurable key, grouped by command; flags and the config file may override them
DEFAULTS = {
    "plates": {
        "d_nm": 100.0,
        "z0_frac": 0.5,
        "a0_nm": 0.1,
        "q_e": 1.0,
        "omega0_ev": 0.01,
        "z_ratio": 50.0,
        "omegac_ev": None,
    },
    "sphere": {
        "R_nm": 50.0,
        "z0_nm": 0.5,
        "omegaP_ev": 5.0,
        "a0_nm": 0.5,
        "q_e": 1.0,
        "omega0_ev": 2.5,
        "ell_max": "inf",
    },
    "sweep": {
        "z0_frac": 0.5,
        "a0_nm": 0.1,
        "q_e": 1.0,
        "omega0_over_vc": 0.5,
        "omegac_ratio": 10.0,
        "d_min": 2.0,
        "d_max": 100.0,
        "d_count": 25,
        "z_min": 0.1,
        "z_max": 300.0,
        "z_count": 25,
    },
    "figure": {},
    "selftest": {},
}
_INTEGER_KEYS = {"d_count", "z_count"}


class ConfigError(ValueError):
    pass


def read_config(path):
    """Parse a flat ``key = value`` file; ``#`` starts a comment."""
    values = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    for number, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{number}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        values[key.replace("-", "_")] = value
    return values


def _coerce(key, value):
    if value is None or key == "ell_max":
        return value
    try:
        number = int(value) if key in _INTEGER_KEYS else float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{key} must be a number, got {value!r}") from None
    if not (math.isfinite(number) and number > 0):
        raise ConfigError(f"{key} must be positive and finite, got {value!r}")
    return number


def resolve(command, flags, config):
    """Merge settings with precedence flags > config file > defaults."""
    defaults = DEFAULTS[command]
    unknown = sorted(set(config) - set(defaults))
    if unknown:
        raise ConfigError(f"unknown config keys for {command}: {', '.join(unknown)}")
    merged = {}
    for key, default in defaults.items():
        value = flags.get(key)
        if value is None:
            value = config.get(key, default)
        merged[key] = _coerce(key, value)
    return merged


def _ell_max(value):
    if str(value).strip().lower() in ("inf", "infinity"):
        return math.inf
    try:
        number = int(value)
    except ValueError:
        raise ConfigError(f"ell_max must be a positive integer or 'inf', got {value!r}") from None
    if number < 1:
        raise ConfigError(f"ell_max must be at least 1, got {value!r}")
    return number


# --- serialization --------------------------------------------------------


def _format(value):
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            raise ValueError("non-finite value in output row")
        return format(float(value), ".17g")
    return str(value)


def _json_value(value):
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            raise ValueError("non-finite value in output row")
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    return value


def render(table, fmt):
    """Serialize a :class:`figures.Table` to text."""
    buf = io.StringIO()
    if fmt == "csv":
        for line in table.comments:
            buf.write(f"# {line}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([_format(v) for v in row])
    else:
        for row in table.rows:
            buf.write(json.dumps(dict(zip(table.columns, map(_json_value, row)))) + "\n")
    return buf.getvalue()


def _safe_row(compute, width):
    """Run ``compute`` and turn numerical failures into an error column."""
    try:
        values = list(compute())
        for v in values:
            _format(v)
        return values + [""], None
    except (NonConvergenceError, ValueError, ArithmeticError) as exc:
        return [None] * width + [f"{type(exc).__name__}: {exc}"], exc


# --- commands -------------------------------------------------------------

PLATES_COLUMNS = [
    "d_nm", "z0_over_d", "a0_nm", "q_over_e", "omega0_ev", "Z_over_Zvac", "omegac_ev",
    "nu0", "eta", "F_im", "F_A", "bound_ratio",
    "e_im_vc", "e_A_vc", "e_cav_vc", "total_vc", "total_hbar_omega0", "total_ev",
]

SPHERE_COLUMNS = [
    "R_nm", "z0_nm", "omegaP_ev", "a0_nm", "q_over_e", "omega0_ev", "ell_max",
    "x", "y", "Zeff_over_Zvac", "F_im_sp", "F_P", "e_im_vc", "e_P_vc", "total_vc", "total_hbar_omega0",
    "ratio_P_over_im",
]

SWEEP_COLUMNS = ["d_over_a0", "Z_over_Zvac", "nu0", "eta", "e_im_vc", "e_A_vc", "e_cav_vc", "total_vc", "sign"]


def _plates_table(p):
    try:
        m = DipoleModel(p["q_e"], p["a0_nm"], p["omega0_ev"])
        g = PlateGeometry(p["d_nm"], p["z0_frac"])
        s = PlateSetup(g, m, p["z_ratio"], p["omegac_ev"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    def compute():
        b = total_shift(s)
        frequency = nu0(g.d, m)
        return [
            g.d, g.z0_over_d, m.a0, m.q_over_e, m.omega0, s.z_over_zvac, s.omega_c,
            frequency, eta(s), f_im(g.z0_over_d), f_A(frequency, g.z0_over_d), bound_ratio(g, m),
            b.e_im, b.e_A, b.e_cav, b.total,
            b.in_units(EnergyUnit.HBAR_OMEGA0)["total"], b.total * m.vc,
        ]

    row, err = _safe_row(compute, len(PLATES_COLUMNS))
    return figures.Table(PLATES_COLUMNS + ["error"], [row]), err


def _sphere_table(p):
    try:
        m = DipoleModel(p["q_e"], p["a0_nm"], p["omega0_ev"])
        s = SphereSetup(p["R_nm"], p["z0_nm"], p["omegaP_ev"], m, _ell_max(p["ell_max"]))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    def compute():
        e_im = delta_e_im_sphere(s)
        e_p = delta_e_p(s)
        total = e_im + e_p
        ell = "inf" if s.ell_max == math.inf else int(s.ell_max)
        return [
            s.R, s.z0, s.omega_P, m.a0, m.q_over_e, m.omega0, ell,
            s.x, s.y, effective_impedance_ratio(s), f_im_sp(s.y), f_p(s.x, s.y, s.ell_max),
            e_im, e_p, total, total / m.hbar_omega0_over_vc, e_p / abs(e_im),
        ]

    row, err = _safe_row(compute, len(SPHERE_COLUMNS))
    return figures.Table(SPHERE_COLUMNS + ["error"], [row]), err


def _sweep_table(p, jobs, contour):
    if p["d_min"] >= p["d_max"] or p["z_min"] >= p["z_max"]:
        raise ConfigError("sweep ranges need min < max")
    if p["d_count"] < 2 or p["z_count"] < 2:
        raise ConfigError("sweep counts must be at least 2")
    ds = np.geomspace(p["d_min"], p["d_max"], p["d_count"])
    zs = np.geomspace(p["z_min"], p["z_max"], p["z_count"])
    try:
        result = sign_boundary_grid(
            ds, zs, p["z0_frac"], p["omega0_over_vc"], p["q_e"], p["a0_nm"], p["omegac_ratio"], jobs=jobs
        )
    except NonConvergenceError as exc:
        width = 2 if contour else len(SWEEP_COLUMNS)
        columns = ["d_over_a0", "Z_star_over_Zvac"] if contour else SWEEP_COLUMNS
        return figures.Table(columns + ["error"], [[None] * width + [str(exc)]]), exc
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    if contour:
        rows = [[d, z, "" if z is not None else "no sign change in range"] for d, z in result.contour]
        return figures.Table(["d_over_a0", "Z_star_over_Zvac", "error"], rows), None
    rows = []
    for pt in result.points:
        b = pt.breakdown
        rows.append([pt.d_over_a0, pt.z_over_zvac, pt.nu0, pt.eta, b.e_im, b.e_A, b.e_cav, b.total, pt.sign, ""])
    return figures.Table(SWEEP_COLUMNS + ["error"], rows), None


SELFTEST_COLUMNS = ["check", "value", "expected", "tolerance", "status"]


def selftest_table():
    checks = [
        ("F_im(1/2)", lambda: f_im(0.5), 4.2072, 0.005),
        ("g_A2 logistic cutoff 10", lambda: g_a2(CutoffSpec.logistic(10)).value, 1 / 12, 1e-3),
        ("F_A(0, 1/2)", lambda: f_A(0.0, 0.5), 2 * math.pi / 3, 1e-3),
        ("F_P(0, 0.01) infinite ell_max", lambda: f_p(0.0, 0.01), math.pi / math.sqrt(32), 0.02 * math.pi / math.sqrt(32)),
    ]
    rows = []
    failed = False
    for name, fn, expected, tol in checks:
        try:
            value = fn()
            ok = abs(value - expected) <= tol
        except NonConvergenceError:
            value, ok = None, False
        failed = failed or not ok
        rows.append([name, value, expected, tol, "PASS" if ok else "FAIL"])
    return figures.Table(SELFTEST_COLUMNS, rows), failed


def _jobs(flag):
    if flag is not None:
        value = flag
    else:
        env = os.environ.get("VACSHIFT_JOBS")
        if env is None:
            return 1
        try:
            value = int(env)
        except ValueError:
            raise ConfigError(f"VACSHIFT_JOBS must be an integer, got {env!r}") from None
    if value < 1:
        raise ConfigError(f"jobs must be at least 1, got {value}")
    return value


def build_parser():
    parser = argparse.ArgumentParser(prog="vacshift", description="Vacuum-induced ground-state shifts of a dipole.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key = value file; flags override it")
    common.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    common.add_argument("--output", "-o", help="write here instead of standard output")
    common.add_argument("--jobs", type=int, help="worker threads (default: $VACSHIFT_JOBS or 1)")
    sub = parser.add_subparsers(dest="command", required=True)

    plates = sub.add_parser("plates", parents=[common], help="shift between two plates coupled to an LC mode")
    plates.add_argument("--d-nm", type=float, dest="d_nm", help="plate spacing (nm)")
    plates.add_argument("--z0-frac", type=float, dest="z0_frac", help="z0/d of the positive charge")
    plates.add_argument("--a0-nm", type=float, dest="a0_nm", help="dipole size (nm)")
    plates.add_argument("--q-e", type=float, dest="q_e", help="charge in units of e")
    plates.add_argument("--omega0-ev", type=float, dest="omega0_ev", help="transition energy (eV)")
    plates.add_argument("--z-ratio", type=float, dest="z_ratio", help="LC impedance Z/Z_vac")
    plates.add_argument("--omegac-ev", type=float, dest="omegac_ev", help="LC resonance energy (eV), default 10 omega0")

    sphere = sub.add_parser("sphere", parents=[common], help="shift next to a plasmonic nanosphere")
    sphere.add_argument("--R-nm", type=float, dest="R_nm", help="sphere radius (nm)")
    sphere.add_argument("--z0-nm", type=float, dest="z0_nm", help="gap to the surface (nm)")
    sphere.add_argument("--omegaP-ev", type=float, dest="omegaP_ev", help="plasma energy (eV)")
    sphere.add_argument("--a0-nm", type=float, dest="a0_nm", help="dipole size (nm)")
    sphere.add_argument("--q-e", type=float, dest="q_e", help="charge in units of e")
    sphere.add_argument("--omega0-ev", type=float, dest="omega0_ev", help="transition energy (eV)")
    sphere.add_argument("--ell-max", dest="ell_max", help="highest plasmon mode, or 'inf'")

    sweep = sub.add_parser("sweep", parents=[common], help="total plate shift over a log grid of d/a0 and Z/Z_vac")
    sweep.add_argument("--z0-frac", type=float, dest="z0_frac")
    sweep.add_argument("--a0-nm", type=float, dest="a0_nm")
    sweep.add_argument("--q-e", type=float, dest="q_e")
    sweep.add_argument("--omega0-over-vc", type=float, dest="omega0_over_vc", help="hbar omega0 / V_C")
    sweep.add_argument("--omegac-ratio", type=float, dest="omegac_ratio", help="omega_c / omega0")
    for axis in ("d", "z"):
        for part in ("min", "max"):
            sweep.add_argument(f"--{axis}-{part}", type=float, dest=f"{axis}_{part}")
        sweep.add_argument(f"--{axis}-count", type=int, dest=f"{axis}_count")
    sweep.add_argument("--contour", action="store_true", help="emit the zero contour Z*(d) instead of the grid")

    figure = sub.add_parser("figure", parents=[common], help="data behind a published figure")
    figure.add_argument("name", choices=figures.FIGURES)

    sub.add_parser("selftest", parents=[common], help="check the headline constants")
    return parser


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    error = None
    failed = False
    try:
        jobs = _jobs(args.jobs)
        config = read_config(args.config) if args.config else {}
        flags = {k: v for k, v in vars(args).items() if k in DEFAULTS[args.command]}
        params = resolve(args.command, flags, config)
        if args.command == "plates":
            table, error = _plates_table(params)
        elif args.command == "sphere":
            table, error = _sphere_table(params)
        elif args.command == "sweep":
            table, error = _sweep_table(params, jobs, args.contour)
        elif args.command == "figure":
            table = figures.figure_data(args.name, jobs=jobs)
        else:
            table, failed = selftest_table()
    except ConfigError as exc:
        print(f"vacshift: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NonConvergenceError as exc:
        print(f"vacshift: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC

    text = render(table, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "selftest":
        for row in table.rows:
            print(f"{row[4]} {row[0]}", file=sys.stderr)
    if error is not None:
        print(f"vacshift: numerical failure: {error}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_NUMERIC if failed else EXIT_OK


def main():
    sys.exit(run())
