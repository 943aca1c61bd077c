"""Transverse-mode vacuum shift of a dipole between two plates.

The shift is assembled from four dimensionless Lamb-type functions,

    F_A = 2 pi [g_A2 + f_A2 - g_Ap - f_Ap],

each a regularized difference between a mode sum over the plate modes
``nu = n`` (in units of ``pi c / d``) and its continuum limit. Every function
has a numeric path that applies an explicit high-frequency cutoff and an
analytic path for the cutoff-independent limit.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .dipole import ALPHA, nu0 as _nu0
from .numerics import (
    CutoffKind,
    CutoffSpec,
    SummandSpec,
    abel_sum,
    cutoff_integral,
    integrate_semi_infinite,
    sum_minus_integral,
    weighted_series,
)
from .plates_static import f_im

G_A2_LIMIT = 1 / 12
_WALL_WARNING = "numeric mode sum converges poorly within 0.1 d of a plate; prefer the analytic path"


class LambPath(enum.Enum):
    NUMERIC_SHARP = "NumericSharp"
    NUMERIC_SMOOTH = "NumericSmooth"
    ANALYTIC_CLOSED_FORM = "AnalyticClosedForm"
    ANALYTIC_LOW_FREQ = "AnalyticLowFreq"
    ANALYTIC_HIGH_FREQ = "AnalyticHighFreq"


@dataclass(frozen=True)
class LambFunctionResult:
    """Value of a Lamb-type function and how it was obtained.

    ``warning`` is set, rather than raising, when a path is used outside the
    range where it is reliable (numeric sums near a wall, an expansion used
    on the wrong side of ``nu0 = 1``).
    """

    value: float
    path: LambPath
    cutoff: CutoffSpec | None = None
    tail_estimate: float = 0.0
    warning: str | None = None

    @property
    def converged(self):
        return self.tail_estimate < 1e-6

    def __float__(self):
        return float(self.value)


def _numeric_path(c):
    return LambPath.NUMERIC_SHARP if c.kind is CutoffKind.SHARP else LambPath.NUMERIC_SMOOTH


def _check_position(x):
    if not 0 < x < 1:
        raise ValueError(f"z0/d must lie in (0, 1), got {x!r}")


def _check_cutoff(c):
    if not c.finite:
        raise ValueError("numeric path needs a finite cutoff scale")


def _near_wall(x):
    return _WALL_WARNING if (x < 0.1 or x > 0.9) else None


def _expansion_warning(path, nu0):
    if path is LambPath.ANALYTIC_LOW_FREQ and nu0 > 1:
        return "low-frequency form used above nu0 = 1"
    if path is LambPath.ANALYTIC_HIGH_FREQ and nu0 < 1:
        return "high-frequency form used below nu0 = 1"
    return None


def _logistic_tail(c, n):
    """``int_n^inf w(nu) dnu = ln(1 + exp(lam - n))`` for the logistic weight."""
    t = c.lam - n
    return t + math.log1p(math.exp(-t)) if t > 0 else math.log1p(math.exp(t))


# --- g_A2 -----------------------------------------------------------------


def g_a2(c=None):
    """Position-independent part of the ``A^2`` contribution.

    Parameters
    ----------
    c : CutoffSpec, optional
        Cutoff for the numeric path. ``None`` returns the regularized limit
        ``1/12``.
    """
    if c is None:
        return LambFunctionResult(G_A2_LIMIT, LambPath.ANALYTIC_CLOSED_FORM)
    _check_cutoff(c)
    lam = c.lam
    if c.kind is CutoffKind.SHARP:
        def tail(n):
            return max(lam - n, 0.0)
        integral = 0.5 * lam * lam
    elif c.kind is CutoffKind.LOGISTIC:
        def tail(n):
            return _logistic_tail(c, n)
        integral = cutoff_integral(c, lambda nu: nu, 0.0)
    else:
        def tail(n):
            return cutoff_integral(c, lambda nu: 1.0, n)
        # swapping the order of integration turns the double integral into one
        integral = cutoff_integral(c, lambda nu: nu, 0.0)
    spec = SummandSpec(tail, regularized=True, integral=integral)
    res = sum_minus_integral(spec, c)
    return LambFunctionResult(res.value, _numeric_path(c), c, res.tail_estimate)


# --- f_A2 -----------------------------------------------------------------


def f_a2(z0_over_d, c=None):
    """Position-dependent part of the ``A^2`` contribution.

    The analytic value is ``1/(4 sin^2(pi z0/d))``. The numeric path sums
    ``-sum_n n^2 cos(2 pi n z0/d) int_n^inf w(nu)/nu^2 dnu``.
    """
    _check_position(z0_over_d)
    if c is None:
        return LambFunctionResult(0.25 / math.sin(math.pi * z0_over_d) ** 2, LambPath.ANALYTIC_CLOSED_FORM)
    _check_cutoff(c)
    lam = c.lam
    if c.kind is CutoffKind.SHARP:
        def inner(n):
            return 1 / n - 1 / lam
    else:
        def inner(n):
            return cutoff_integral(c, lambda nu: 1 / (nu * nu), n)
    res = _cosine_series(inner, z0_over_d, c)
    return LambFunctionResult(res.value, _numeric_path(c), c, res.tail_estimate, _near_wall(z0_over_d))


def _cosine_series(inner, x, c):
    """``-sum_{n >= 1} n^2 cos(2 pi n x) inner(n)`` with the cutoff inside ``inner``."""

    def term(n):
        if n == 0:
            return 0.0
        return -n * n * math.cos(2 * math.pi * n * x) * inner(n)

    return weighted_series(SummandSpec(term, regularized=True), c, start=1)


# --- g_Ap -----------------------------------------------------------------


def g_ap_low_freq(nu0):
    """Low-frequency closed form of ``g_Ap``; accurate at all ``nu0`` to a few 1e-4."""
    if nu0 == 0:
        return 0.0
    return nu0 * ((nu0 + 0.5) * math.log1p(1 / nu0) + 1 / (12 * (1 + nu0)) - 1)


def g_ap_high_freq(nu0):
    """Leading Euler-Maclaurin terms of ``g_Ap`` for ``nu0 >> 1``.

    The correction enters with a minus sign; see the decisions ledger.
    """
    return G_A2_LIMIT - 1 / (360 * nu0 * nu0)


def g_ap(nu0, c=None, path=None):
    """Position-independent part of the ``A.p`` contribution.

    Parameters
    ----------
    nu0 : float
        Dipole frequency in units of ``pi c / d``; must be positive.
    c : CutoffSpec, optional
        Selects the numeric path.
    path : LambPath, optional
        ``ANALYTIC_LOW_FREQ`` (the default without a cutoff) or
        ``ANALYTIC_HIGH_FREQ``.
    """
    if not nu0 > 0:
        raise ValueError(f"nu0 must be positive, got {nu0!r}")
    if c is not None:
        return _g_ap_numeric(nu0, c)
    path = path or LambPath.ANALYTIC_LOW_FREQ
    if path is LambPath.ANALYTIC_LOW_FREQ:
        value = g_ap_low_freq(nu0)
    elif path is LambPath.ANALYTIC_HIGH_FREQ:
        value = g_ap_high_freq(nu0)
    else:
        raise ValueError(f"g_ap has no {path.value} path")
    return LambFunctionResult(value, path, warning=_expansion_warning(path, nu0))


def _g_ap_numeric(nu0, c):
    _check_cutoff(c)
    lam = c.lam
    if c.kind is CutoffKind.SHARP:
        def tail(n):
            return nu0 * math.log((nu0 + lam) / (nu0 + n)) if n < lam else 0.0
        integral = nu0 * (lam - nu0 * math.log1p(lam / nu0))
    else:
        def tail(n):
            return cutoff_integral(c, lambda nu: nu0 / (nu + nu0), n)
        integral = cutoff_integral(c, lambda nu: nu * nu0 / (nu + nu0), 0.0)
    spec = SummandSpec(tail, regularized=True, integral=integral)
    res = sum_minus_integral(spec, c)
    return LambFunctionResult(res.value, _numeric_path(c), c, res.tail_estimate)


# --- f_Ap -----------------------------------------------------------------


def _one_minus_t_arctan(t):
    """``1 - t arctan(1/t)`` without cancellation at large ``t``."""
    if t < 10:
        return 1 - t * math.atan(1 / t) if t > 0 else 1.0
    s2 = 1 / (t * t)
    # 1 - arctan(s)/s = s^2/3 - s^4/5 + s^6/7 - ...
    total, power = 0.0, 1.0
    for k in range(1, 9):
        power *= s2
        total += (-1) ** (k + 1) * power / (2 * k + 1)
    return total


def _kernel(u, zeta):
    """``u cosh(u zeta) / sinh(pi u)`` evaluated without overflow."""
    if u == 0:
        return 1 / math.pi
    num = math.exp(-u * (math.pi - zeta)) + math.exp(-u * (math.pi + zeta))
    return u * num / -math.expm1(-2 * math.pi * u)


def _contour_parts(nu0, x):
    """``(f_Ap, 1/(4 sin^2) - f_Ap)`` from the contour-integral representation."""
    zeta = 2 * math.pi * x - math.pi
    decay = math.pi - abs(zeta)
    points = sorted({p for p in (nu0, 1 / decay, 10 / decay) if p > 0})

    def f(u):
        return _kernel(u, zeta) * _one_minus_t_arctan(u / nu0)

    def rest(u):
        t = u / nu0
        return _kernel(u, zeta) * (1 - _one_minus_t_arctan(t))

    value = integrate_semi_infinite(f, 0.0, breakpoints=points, epsrel=1e-11, epsabs=1e-15)
    complement = integrate_semi_infinite(rest, 0.0, breakpoints=points, epsrel=1e-11, epsabs=1e-15)
    return value, complement


def f_ap_high_freq(nu0, x):
    return 0.25 / math.sin(math.pi * x) ** 2 - f_im(x) / (2 * math.pi**2 * nu0)


def f_ap(nu0, z0_over_d, c=None, path=None):
    """Position-dependent part of the ``A.p`` contribution.

    Without a cutoff the default is the contour-integral representation

        int_0^inf u cosh(u zeta)/sinh(pi u) [1 - (u/nu0) arctan(nu0/u)] du,

    with ``zeta = 2 pi z0/d - pi``, which holds at every ``nu0`` and is
    reported as ``ANALYTIC_CLOSED_FORM``. The expansions ``nu0/4`` and
    ``1/(4 sin^2) - F_im/(2 pi^2 nu0)`` are available through ``path``.
    """
    if not nu0 > 0:
        raise ValueError(f"nu0 must be positive, got {nu0!r}")
    _check_position(z0_over_d)
    if c is not None:
        return _f_ap_numeric(nu0, z0_over_d, c)
    path = path or LambPath.ANALYTIC_CLOSED_FORM
    if path is LambPath.ANALYTIC_CLOSED_FORM:
        value, _ = _contour_parts(nu0, z0_over_d)
    elif path is LambPath.ANALYTIC_LOW_FREQ:
        value = nu0 / 4
    elif path is LambPath.ANALYTIC_HIGH_FREQ:
        value = f_ap_high_freq(nu0, z0_over_d)
    else:
        raise ValueError(f"f_ap has no {path.value} path")
    return LambFunctionResult(value, path, warning=_expansion_warning(path, nu0))


def _ap_inner_sharp_free(n, nu0):
    # int_n^inf nu0 / (nu^2 (nu + nu0)) dnu
    return 1 / n - math.log1p(nu0 / n) / nu0


def _f_ap_numeric(nu0, x, c):
    _check_cutoff(c)
    lam = c.lam
    if c.kind is CutoffKind.SHARP:
        past = _ap_inner_sharp_free(lam, nu0)

        def inner(n):
            return _ap_inner_sharp_free(n, nu0) - past
    else:
        def inner(n):
            return cutoff_integral(c, lambda nu: nu0 / (nu * nu * (nu + nu0)), n)
    res = _cosine_series(inner, x, c)
    return LambFunctionResult(res.value, _numeric_path(c), c, res.tail_estimate, _near_wall(x))


def f_ap_abel(nu0, z0_over_d):
    """Abel-summed cutoff-free mode series for ``f_Ap``.

    The series ``-sum n^2 cos(2 pi n x) int_n^inf nu0/(nu^2 (nu + nu0)) dnu``
    diverges; damping by ``r^n`` and extrapolating ``r -> 1`` assigns it a
    finite value, ``nu0/4 + O(nu0^2)`` at small ``nu0``.
    """
    _check_position(z0_over_d)

    def term(n):
        inner = 1 / n - np.log1p(nu0 / n) / nu0
        return -n * n * np.cos(2 * np.pi * n * z0_over_d) * inner

    return abel_sum(term)


# --- assembly -------------------------------------------------------------


def f_A(nu0, z0_over_d):
    """Dimensionless transverse scaling function ``F_A(nu0, z0/d) >= 0``.

    Uses ``g_A2 = 1/12``, the closed form of ``f_A2``, the low-frequency
    closed form of ``g_Ap`` and the contour-integral ``f_Ap``. The
    ``f_A2 - f_Ap`` difference is integrated directly so that no
    cancellation occurs near the walls.
    """
    if nu0 < 0:
        raise ValueError(f"nu0 must be non-negative, got {nu0!r}")
    _check_position(z0_over_d)
    if nu0 == 0:
        return 2 * math.pi * (G_A2_LIMIT + 0.25 / math.sin(math.pi * z0_over_d) ** 2)
    _, f_diff = _contour_parts(nu0, z0_over_d)
    return 2 * math.pi * (G_A2_LIMIT - g_ap_low_freq(nu0) + f_diff)


def delta_e_A(g, m):
    """Transverse shift ``alpha hbar omega0 (q a0/(e d))^2 F_A`` in units of ``V_C``."""
    frequency = _nu0(g.d, m)
    return ALPHA * m.hbar_omega0_over_vc * (m.q_over_e * m.a0 / g.d) ** 2 * f_A(frequency, g.z0_over_d)


def bound_ratio(g, m):
    """``pi nu0 F_A / F_im``, equal to ``Delta E_A / |Delta E_im|`` and always below 1."""
    frequency = _nu0(g.d, m)
    return math.pi * frequency * f_A(frequency, g.z0_over_d) / f_im(g.z0_over_d)
