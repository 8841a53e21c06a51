"""Shared numerical substrate.

Special functions, improper-integral quadrature on the half line,
one-dimensional minimization and root finding, and monotone cubic
interpolation of tabulated data.  Everything here is a pure function of
its inputs and safe to call concurrently.

Quadrature, minimization, root finding and interpolation are backed by
QUADPACK / Brent / PCHIP as exposed through scipy; the exponential
integral E1 is computed locally (power series for small argument,
modified-Lentz continued fraction for large argument) because it sits
inside a minimization loop and its accuracy budget is audited by the
test suite against independent quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import integrate, interpolate, optimize

from .errors import BracketError, ConvergenceError, DomainError, FormatError, NonFiniteError

EULER_GAMMA = 0.5772156649015328606065120900824024

__all__ = [
    "QuadratureSpec",
    "MinimizeResult",
    "DEFAULT_QUADRATURE",
    "omega",
    "log_gamma",
    "beta",
    "exp_e1",
    "integrate_halfline",
    "quad_halfline",
    "quad_finite",
    "gauss_cells",
    "minimize_scalar",
    "solve_root",
    "interpolate_monotone",
]


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and budget for adaptive quadrature.

    tail_cut is the radius beyond which the integrand is handed to the
    decay-adapted infinite-interval transform instead of plain
    subdivision.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_refinements: int = 200
    tail_cut: float = 30.0

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError("rel_tol must be positive")
        if self.abs_tol < 0:
            raise DomainError("abs_tol must be non-negative")
        if self.max_refinements < 1:
            raise DomainError("max_refinements must be at least 1")
        if not self.tail_cut > 0:
            raise DomainError("tail_cut must be positive")


DEFAULT_QUADRATURE = QuadratureSpec()


@dataclass(frozen=True)
class MinimizeResult:
    argmin: float
    min_value: float
    iterations: int
    converged: bool


def omega(d: int) -> float:
    """Surface measure of the unit sphere in d dimensions, 2 pi^(d/2) / Gamma(d/2).

    This is the angular factor turning a radial integral into a full
    d-dimensional one (2 for d=1, 2 pi for d=2, 4 pi for d=3).
    """
    if d < 1:
        raise DomainError(f"dimension must be >= 1, got {d}")
    return 2.0 * math.pi ** (d / 2.0) / math.gamma(d / 2.0)


def log_gamma(x: float) -> float:
    if x <= 0:
        raise DomainError(f"log_gamma requires a positive argument, got {x}")
    return math.lgamma(x)


def beta(a: float, b: float) -> float:
    """Euler Beta for strictly positive arguments, via log-gamma."""
    if a <= 0 or b <= 0:
        raise DomainError(f"beta requires positive arguments, got ({a}, {b})")
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


def _e1_series(x: float) -> float:
    # E1(x) = -gamma - ln x + sum_{n>=1} (-1)^(n+1) x^n / (n n!)
    s, term = 0.0, 1.0
    for n in range(1, 500):
        term *= -x / n
        add = term / n
        s += add
        if abs(add) < 1e-18 * max(1.0, abs(s)):
            break
    return -EULER_GAMMA - math.log(x) - s


def _e1_continued_fraction(x: float) -> float:
    # E1(x) = e^{-x} / (x + 1 - 1/(x + 3 - 4/(x + 5 - 9/(...)))), modified Lentz
    tiny = 1e-300
    b = x + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 500):
        a = -float(i * i)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        if c == 0.0:
            c = tiny
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return h * math.exp(-x)


def exp_e1(x: float) -> float:
    """Exponential integral E1(x) for x > 0.

    Power series below x = 1, continued fraction above; both branches
    agree with direct quadrature of the defining integral to ~1e-14.
    """
    if x <= 0:
        raise DomainError(f"exp_e1 requires x > 0, got {x}")
    if x > 700.0:
        return 0.0
    return _e1_series(x) if x <= 1.0 else _e1_continued_fraction(x)


def _guarded(f: Callable[[float], float]) -> Callable[[float], float]:
    def g(r: float) -> float:
        v = f(r)
        if not np.isfinite(v):
            raise NonFiniteError(f"integrand is not finite at r = {r!r}")
        return v

    return g


def _run_quad(f, lo, hi, spec: QuadratureSpec, points=None):
    res = integrate.quad(
        f,
        lo,
        hi,
        epsabs=spec.abs_tol,
        epsrel=spec.rel_tol,
        limit=max(spec.max_refinements, len(points) + 2 if points else 1),
        points=points,
        full_output=1,
    )
    value, err = res[0], res[1]
    if len(res) > 3:
        # ier != 0: accept anyway if the achieved error already meets the request
        if err > max(spec.abs_tol, spec.rel_tol * abs(value)):
            raise ConvergenceError(
                f"quadrature on [{lo}, {hi}] did not converge: {res[3]}"
            )
    return value, err


def quad_finite(f: Callable[[float], float], lo: float, hi: float,
                spec: QuadratureSpec | None = None,
                points: Sequence[float] | None = None) -> tuple[float, float]:
    """Adaptive quadrature on a finite interval; returns (value, error estimate)."""
    spec = spec or DEFAULT_QUADRATURE
    if hi <= lo:
        return 0.0, 0.0
    pts = None
    if points is not None:
        pts = [p for p in points if lo < p < hi]
        pts = pts or None
    return _run_quad(_guarded(f), lo, hi, spec, points=pts)


def quad_halfline(f: Callable[[float], float],
                  spec: QuadratureSpec | None = None) -> tuple[float, float]:
    """Adaptive quadrature of f over [0, inf); returns (value, error estimate).

    The interval is split at spec.tail_cut: plain adaptive subdivision
    below, the infinite-interval variable transform above.  Integrands
    must be finite at every interior evaluation point; NaN or infinity
    raises NonFiniteError rather than propagating silently.
    """
    spec = spec or DEFAULT_QUADRATURE
    g = _guarded(f)
    head, err_head = _run_quad(g, 0.0, spec.tail_cut, spec)
    tail, err_tail = _run_quad(g, spec.tail_cut, np.inf, spec)
    return head + tail, err_head + err_tail


def integrate_halfline(f: Callable[[float], float],
                       spec: QuadratureSpec | None = None) -> float:
    """Integral of f over [0, inf) within the requested tolerance."""
    return quad_halfline(f, spec)[0]


_GAUSS_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def gauss_cells(f, knots: np.ndarray, order: int = 12) -> float:
    """Composite Gauss-Legendre quadrature over consecutive cells of `knots`.

    Intended for integrands that are piecewise smooth between knots
    (monotone-cubic interpolants of tabulated data); `f` must accept
    numpy arrays.
    """
    if order not in _GAUSS_CACHE:
        _GAUSS_CACHE[order] = np.polynomial.legendre.leggauss(order)
    xg, wg = _GAUSS_CACHE[order]
    knots = np.asarray(knots, dtype=float)
    lo, hi = knots[:-1], knots[1:]
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    nodes = mid[:, None] + half[:, None] * xg[None, :]
    vals = f(nodes)
    if not np.all(np.isfinite(vals)):
        bad = nodes[~np.isfinite(vals)]
        raise NonFiniteError(f"integrand is not finite at r = {bad.ravel()[0]!r}")
    return float(np.sum(half[:, None] * wg[None, :] * vals))


def minimize_scalar(f: Callable[[float], float],
                    bracket: tuple[float, float],
                    rel_tol: float = 1e-12,
                    max_iter: int = 500) -> MinimizeResult:
    """Minimize a unimodal scalar function.

    The bracket is first scanned (geometrically when it spans decades,
    linearly otherwise) for an interior point beating both ends; the
    bracket is expanded geometrically when the scan minimum sits on an
    edge.  The refined minimum comes from Brent's method (golden section
    plus parabolic steps).
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise BracketError(f"empty bracket ({lo}, {hi})")

    for _ in range(40):
        if lo > 0 and hi / lo > 100.0:
            grid = np.geomspace(lo, hi, 96)
        else:
            grid = np.linspace(lo, hi, 96)
        vals = np.array([f(x) for x in grid])
        if not np.all(np.isfinite(vals)):
            raise NonFiniteError("objective is not finite on the scan grid")
        i = int(np.argmin(vals))
        if 0 < i < len(grid) - 1:
            break
        # minimum on an edge: expand that side and rescan
        if i == 0:
            lo = lo / 4.0 if lo > 0 else lo - (hi - lo)
        else:
            hi = hi * 4.0 if hi > 0 else hi + (hi - lo)
    else:
        raise BracketError("no interior minimum detected after bracket expansion")

    try:
        res = optimize.minimize_scalar(
            f,
            bracket=(grid[i - 1], grid[i], grid[i + 1]),
            method="brent",
            options={"xtol": rel_tol, "maxiter": max_iter},
        )
    except ValueError:
        # flat scan neighborhood (ties around the minimum): golden section
        # on the bounded interval instead of a strict three-point bracket
        res = optimize.minimize_scalar(
            f,
            bounds=(grid[i - 1], grid[i + 1]),
            method="bounded",
            options={"xatol": rel_tol * max(1.0, abs(grid[i])), "maxiter": max_iter},
        )
    if not res.success:
        raise ConvergenceError(f"scalar minimization did not converge: {res.message}")
    return MinimizeResult(argmin=float(res.x), min_value=float(res.fun),
                          iterations=int(getattr(res, "nit", res.nfev)),
                          converged=bool(res.success))


def solve_root(f: Callable[[float], float],
               bracket: tuple[float, float],
               rel_tol: float = 1e-13) -> float:
    """Root of a continuous function changing sign over the bracket."""
    lo, hi = float(bracket[0]), float(bracket[1])
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise BracketError(f"no sign change on [{lo}, {hi}]: f = ({flo}, {fhi})")
    return float(optimize.brentq(f, lo, hi, rtol=max(rel_tol, 4e-16), maxiter=200))


class MonotoneInterpolant:
    """C1 monotone-preserving cubic through the sample points.

    Reproduces the samples exactly, never overshoots below the data
    (non-negative data give a non-negative interpolant), and exposes
    the first derivative.
    """

    def __init__(self, x: np.ndarray, y: np.ndarray):
        self.x = x
        self.y = y
        self._p = interpolate.PchipInterpolator(x, y, extrapolate=False)
        self._dp = self._p.derivative()

    def __call__(self, r):
        return self._p(r)

    def derivative(self, r):
        return self._dp(r)


def interpolate_monotone(x, y) -> MonotoneInterpolant:
    """Build a monotone cubic interpolant from an ordered (x, y) table."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.ndim != 1 or x.shape != y.shape:
        raise FormatError("interpolation table must be two equal-length 1-d columns")
    if x.size < 2:
        raise FormatError("interpolation table needs at least two samples")
    if not np.all(np.isfinite(x)) or not np.all(np.isfinite(y)):
        raise FormatError("interpolation table contains non-finite entries")
    if np.any(np.diff(x) <= 0):
        raise FormatError("abscissae must be strictly increasing without duplicates")
    if np.any(y < 0):
        raise FormatError("negative ordinate in density table")
    return MonotoneInterpolant(x, y)
