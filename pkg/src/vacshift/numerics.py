"""Special functions and the regularized summation / quadrature engine.

Everything in here is dimensionless. Mode sums are written in terms of the
continuous mode index ``n`` (units of the fundamental transverse mode) and a
high-frequency weight ``w(nu)`` described by :class:`CutoffSpec`.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np
from scipy import integrate


class VacshiftError(Exception):
    """Base class for errors raised by this package."""


class NonConvergenceError(VacshiftError):
    """A series or iterative procedure did not reach its tolerance."""

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class QuadratureError(NonConvergenceError):
    """Adaptive quadrature finished with an error estimate above tolerance."""


# Bernoulli numbers B_2, B_4, ..., B_14
_BERNOULLI_EVEN = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6)


def polygamma2(x):
    """Second polygamma function, ``d^3/dx^3 log Gamma(x)``, for ``x > 0``.

    Uses the recurrence ``psi2(x) = psi2(x + 1) - 2/x**3`` to push the argument
    above 10, then the asymptotic (Euler-Maclaurin) expansion of the tail of
    ``-2 sum_k (x + k)**-3``.
    """
    x = float(x)
    if not x > 0:
        raise ValueError(f"polygamma2 requires x > 0, got {x!r}")
    shift = 0.0
    while x < 10.0:
        shift -= 2.0 / x**3
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    # -1/x^2 - 1/x^3 - sum_k B_2k (2k+1) / x^(2k+2)
    tail = 0.0
    power = inv2 * inv2
    for k, b in enumerate(_BERNOULLI_EVEN, start=1):
        tail += b * (2 * k + 1) * power
        power *= inv2
    return shift - inv2 - inv2 * inv - tail


def _zeta3():
    n_head = 20
    head = math.fsum(1.0 / n**3 for n in range(n_head - 1, 0, -1))
    N = float(n_head)
    # Euler-Maclaurin tail of sum_{n >= N} n^-3
    tail = (
        1 / (2 * N**2) + 1 / (2 * N**3) + 1 / (4 * N**4)
        - 1 / (12 * N**6) + 1 / (12 * N**8) - 3 / (20 * N**10)
    )
    return head + tail


ZETA3 = _zeta3()


def zeta3():
    """Apery's constant, zeta(3)."""
    return ZETA3


class CutoffKind(enum.Enum):
    SHARP = "sharp"
    LOGISTIC = "logistic"
    CUSTOM = "custom"


@dataclass(frozen=True)
class CutoffSpec:
    """High-frequency regulator ``w(nu)`` with scale ``lam``.

    ``lam = math.inf`` is the "no cutoff" sentinel (weight identically 1).
    ``CUSTOM`` cutoffs carry their own weight function and a tag used in
    output labels.
    """

    kind: CutoffKind
    lam: float
    weight_fn: Callable[[float], float] | None = field(default=None, compare=False)
    tag: str = ""

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError(f"cutoff scale must be positive, got {self.lam!r}")
        if self.kind is CutoffKind.CUSTOM and self.weight_fn is None:
            raise ValueError("custom cutoff needs a weight function")

    @classmethod
    def sharp(cls, lam):
        return cls(CutoffKind.SHARP, float(lam))

    @classmethod
    def logistic(cls, lam):
        return cls(CutoffKind.LOGISTIC, float(lam))

    @classmethod
    def gaussian(cls, lam):
        lam = float(lam)
        return cls(CutoffKind.CUSTOM, lam, lambda nu: math.exp(-((nu / lam) ** 2)), tag="gaussian")

    @classmethod
    def none(cls):
        return cls(CutoffKind.SHARP, math.inf)

    @property
    def finite(self):
        return math.isfinite(self.lam)

    @property
    def label(self):
        return self.tag if self.kind is CutoffKind.CUSTOM else self.kind.value

    def weight(self, nu):
        return cutoff_weight(self, nu)


def cutoff_weight(c, nu):
    """Weight of the regulator ``c`` at frequency index ``nu >= 0``."""
    if nu < 0:
        raise ValueError(f"cutoff weight needs nu >= 0, got {nu!r}")
    if not c.finite:
        return 1.0
    if c.kind is CutoffKind.SHARP:
        return 1.0 if nu <= c.lam else 0.0
    if c.kind is CutoffKind.LOGISTIC:
        # 1 - 1/(1 + exp(-nu + lam)), written to avoid overflow
        t = nu - c.lam
        if t > 0:
            e = math.exp(-t)
            return e / (1.0 + e)
        return 1.0 / (1.0 + math.exp(t))
    return float(c.weight_fn(nu))


def truncation_index(c):
    """Last mode index summed for cutoff ``c``; ``ceil(lam) + 50 lam``."""
    if not c.finite:
        return 20_000
    return math.ceil(c.lam) + math.ceil(50 * c.lam)


def integrate_semi_infinite(f, a, *, breakpoints=(), epsrel=1e-10, epsabs=1e-14, limit=500):
    """Integrate ``f`` over ``[a, inf)`` with adaptive Gauss-Kronrod panels.

    Finite breakpoints split the range; the last panel uses the standard
    ``x = a + (1 - t)/t`` map to the unit interval. Raises
    :class:`QuadratureError` when the combined error estimate exceeds the
    requested tolerance.
    """
    edges = [float(a)] + sorted(float(b) for b in breakpoints if math.isfinite(b) and b > a)
    total = 0.0
    err = 0.0
    pieces = list(zip(edges[:-1], edges[1:])) + [(edges[-1], math.inf)]
    for lo, hi in pieces:
        val, e, *_ = integrate.quad(f, lo, hi, epsabs=epsabs, epsrel=epsrel, limit=limit, full_output=1)
        total += val
        err += e
    if not math.isfinite(total) or err > 10 * max(epsrel * abs(total), epsabs):
        raise QuadratureError(
            f"quadrature on [{a}, inf) reached error {err:.3g} for value {total:.17g}", estimate=err
        )
    return total


class SeriesSum(NamedTuple):
    value: float
    tail_estimate: float


@dataclass(frozen=True)
class SummandSpec:
    """Per-mode term of a primed mode sum.

    ``regularized`` marks summands that already contain the cutoff (through
    an inner frequency integral); for those the cutoff only sets the
    truncation index and is not applied a second time. ``integral`` may carry
    a known value of the matching continuum integral.
    """

    f: Callable[[float], float]
    half_weight_at_zero: bool = True
    regularized: bool = False
    integral: float | None = None


_QUIET_RUN = 8


def weighted_series(s, c, *, start=0, tol=1e-10):
    """Primed sum ``sum'_{n >= start} f(n) w(n)`` truncated per ``c``.

    Past the cutoff scale the loop stops once ``_QUIET_RUN`` consecutive terms
    are negligible against the running sum; the tail estimate is the largest
    of the last few terms. A sharp cutoff sums exactly up to ``floor(lam)``.
    """
    n_max = truncation_index(c)
    exact = c.finite and c.kind is CutoffKind.SHARP
    if exact:
        n_max = math.floor(c.lam)
    terms = []
    recent = []
    running = 0.0
    quiet = 0
    for n in range(start, n_max + 1):
        w = 1.0 if s.regularized else cutoff_weight(c, float(n))
        term = s.f(float(n)) * w if w != 0.0 else 0.0
        if n == 0 and s.half_weight_at_zero:
            term *= 0.5
        terms.append(term)
        running += term
        recent.append(abs(term))
        if len(recent) > _QUIET_RUN:
            recent.pop(0)
        if not exact and n > min(c.lam, 1e300) and abs(term) <= 1e-17 * max(1.0, abs(running)):
            quiet += 1
            if quiet >= _QUIET_RUN:
                break
        else:
            quiet = 0
    value = math.fsum(terms)
    tail = 0.0 if exact else max(recent, default=0.0)
    if tail > tol:
        last = terms[-1] if terms else 0.0
        raise NonConvergenceError(
            f"series not converged at n = {n_max}: last partial term {last:.3g}", estimate=tail
        )
    return SeriesSum(value, tail)


def sum_minus_integral(s, c, *, tol=1e-10):
    """Regularized difference between a primed mode sum and its continuum.

    Returns ``[f(0)/2 + sum_{n>=1} f(n) w(n)] - int_0^inf f(n) w(n) dn`` as a
    :class:`SeriesSum`. The integral is done by adaptive quadrature to
    relative tolerance ``1e-10`` unless ``s.integral`` supplies it.
    """
    series = weighted_series(s, c, tol=tol)
    if s.integral is not None:
        integral = s.integral
    else:
        if s.regularized:
            g = s.f
        else:
            def g(n):
                w = cutoff_weight(c, n)
                return s.f(n) * w if w else 0.0
        points = [c.lam] if c.finite else []
        integral = integrate_semi_infinite(g, 0.0, breakpoints=points, epsrel=1e-12)
    return SeriesSum(series.value - integral, series.tail_estimate)


def cutoff_integral(c, phi, lower, *, epsrel=1e-12):
    """``int_lower^inf phi(nu) w(nu) dnu`` for the regulator ``c``."""
    if c.finite and c.kind is CutoffKind.SHARP:
        if lower >= c.lam:
            return 0.0
        val, err = integrate.quad(phi, lower, c.lam, epsabs=1e-15, epsrel=epsrel, limit=500)
        return val
    if not c.finite:
        return integrate_semi_infinite(phi, lower, epsrel=epsrel)

    def g(nu):
        w = cutoff_weight(c, nu)
        return phi(nu) * w if w else 0.0

    # the weight is negligible (< 1e-30) past lam + 70 for the logistic family
    points = [c.lam] if lower < c.lam else []
    return integrate_semi_infinite(g, lower, breakpoints=points, epsrel=epsrel, epsabs=1e-16)


def gauss_hermite_average(g, sigma, order=20, accept=None):
    """Average of ``g(x, y, z)`` over an isotropic Gaussian of std ``sigma``.

    Tensor-product Gauss-Hermite rule with ``order`` nodes per axis. ``g`` is
    called once with three broadcast arrays. If ``accept`` is given, nodes
    where it returns False are dropped and the remaining weights are
    renormalized.
    """
    if order < 2:
        raise ValueError("Gauss-Hermite order must be at least 2")
    t, w = np.polynomial.hermite.hermgauss(order)
    x = math.sqrt(2.0) * sigma * t
    w = w / math.sqrt(math.pi)
    X, Y, Z = np.meshgrid(x, x, x, indexing="ij")
    W = w[:, None, None] * w[None, :, None] * w[None, None, :]
    if accept is not None:
        mask = np.asarray(accept(X, Y, Z), dtype=bool)
        X, Y, Z, W = X[mask], Y[mask], Z[mask], W[mask]
        W = W / W.sum()
    values = np.asarray(g(X, Y, Z), dtype=float)
    values = np.broadcast_to(values, W.shape)
    return float(np.sum(W * values))


def richardson_series(block_sum, *, n0=64, max_n=2**16, tol=1e-13, orders=(2, 3, 4, 5)):
    """Limit of a slowly converging series from doubling partial sums.

    ``block_sum(lo, hi)`` returns the (possibly array-valued) sum of the terms
    with index in ``[lo, hi)``. Partial sums at ``N = n0 * 2**k`` are
    extrapolated assuming ``S(N) = S + sum_p c_p N**-p`` over ``orders``. The
    extrapolated value is returned once two successive estimates agree to
    ``tol``; past ``max_n`` terms a :class:`NonConvergenceError` is raised.
    """
    s = block_sum(1, n0 + 1)
    n = n0
    rows = []
    previous = None
    while True:
        row = [s]
        for j, p in enumerate(orders[: len(rows)]):
            factor = 2.0**p
            row.append((factor * row[j] - rows[-1][j]) / (factor - 1.0))
        rows.append(row)
        best = row[-1]
        if previous is not None:
            change = float(np.max(np.abs(best - previous)))
            if change <= tol and len(rows) >= 3:
                return best
            if 2 * n > max_n:
                raise NonConvergenceError(
                    f"series not converged after {n} terms (last change {change:.3g})", estimate=change
                )
        previous = best
        s = s + block_sum(n + 1, 2 * n + 1)
        n *= 2


def abel_sum(term, *, radii=(0.999, 0.998, 0.996, 0.992), n_max=200_000):
    """Abel-regularized sum of ``term(n)`` for ``n >= 1``.

    Evaluates ``sum term(n) r**n`` for several ``r`` below 1 and extrapolates
    the result polynomially in ``1 - r`` to ``r = 1``.
    """
    n = np.arange(1, n_max + 1, dtype=float)
    t = term(n)
    eps = np.array([1.0 - r for r in radii])
    sums = np.array([math.fsum(t * np.exp(n * math.log(r))) for r in radii])
    coeffs = np.polyfit(eps, sums, len(radii) - 1)
    return float(coeffs[-1])
