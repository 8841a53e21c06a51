"""Numerical reconstruction of the Lagrange-multiplier extremal densities.

For positive momentum order k the entropic moment W_{1+k/d} is minimized
under fixed normalization and fixed <r^alpha>; the stationary density is
C (a^alpha - r^alpha)^(d/k) on the ball r <= a.  For negative k the same
stationarity condition is solved for the maximization of W_{1+k/d}
(0 < 1+k/d < 1); the integrable branch has both multipliers positive and
reads C (a^alpha + r^alpha)^(d/k) on the whole half line [0, inf) -- the
compact-support branch and the r >= a branch are non-normalizable in the
admissible window alpha > -k d / (d + k).  (The r >= a candidate carries
a (r - a)^(d/k) endpoint singularity with d/k <= -1 throughout that
window, so its normalization integral diverges.)

The reconstruction is the brute-force oracle validating the closed-form
coefficients: constraints are solved in closed form through Beta-function
reduction (with a root-finding fallback used by the tests), while the
extremal's entropic moment is evaluated by quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import constants
from .densities import RadialDensity
from .errors import DomainError
from .functionals import entropic_moment
from .mathcore import beta, omega, solve_root

__all__ = ["ExtremalConstant", "minimizer_density", "maximizer_density",
           "extremal_F", "extremal_G"]


@dataclass(frozen=True)
class ExtremalConstant:
    """A variational constant recovered numerically, with its closed-form
    counterpart (when real-evaluable) and the relative discrepancy."""

    d: int
    alpha: float
    k: float
    numeric_value: float
    closed_form_value: float | None = None
    discrepancy: float | None = None


def _validate_orders(d: int, alpha: float) -> None:
    if d < 1:
        raise DomainError(f"dimension must be >= 1, got {d}")
    if alpha <= 0:
        raise DomainError(f"alpha must be positive, got {alpha}")


def _scale_from_ratio(d: int, alpha: float, ratio_factor: float,
                      N: float, r_alpha: float) -> float:
    # a^alpha = (r_alpha / N) * ratio_factor, from the Beta reduction of
    # the two constraint integrals
    if ratio_factor <= 0 or N <= 0 or r_alpha <= 0:
        raise DomainError("constraint system is infeasible for these parameters")
    return ((r_alpha / N) * ratio_factor) ** (1.0 / alpha)


def minimizer_density(d: int, alpha: float, k: float,
                      N: float = 1.0, r_alpha: float = 1.0) -> RadialDensity:
    """Compactly supported extremal density C (a^alpha - r^alpha)^(d/k),
    r <= a, meeting the constraints int f = N and <r^alpha> = r_alpha.

    Minimizes W_{1+k/d} for k > 0 under those constraints.
    """
    _validate_orders(d, alpha)
    if k <= 0:
        raise DomainError(f"minimizer_density requires k > 0, got {k}")
    e = d / k
    a = _scale_from_ratio(d, alpha, 1.0 + alpha * (e + 1.0) / d, N, r_alpha)
    C = N * alpha / (omega(d) * a ** (d + alpha * e) * beta(d / alpha, e + 1.0))
    a_alpha = a ** alpha

    def rho(r):
        r = np.asarray(r, dtype=float)
        core = np.clip(a_alpha - np.power(r, alpha), 0.0, None)
        return C * np.power(core, e)

    def drho(r):
        r = np.asarray(r, dtype=float)
        core = np.clip(a_alpha - np.power(r, alpha), 0.0, None)
        inner = np.where(core > 0.0, np.power(core, e - 1.0), 0.0)
        return -C * e * alpha * np.power(r, alpha - 1.0) * inner

    return RadialDensity(d=d, N=N, rho=rho, drho=drho,
                         analytic_moments={0.0: N, float(alpha): r_alpha},
                         support_hint=a, support=(0.0, a),
                         label=f"extremal-min(d={d},alpha={alpha},k={k})")


def maximizer_density(d: int, alpha: float, k: float,
                      N: float = 1.0, r_alpha: float = 1.0) -> RadialDensity:
    """Half-line extremal density C (a^alpha + r^alpha)^(d/k) meeting the
    constraints int f = N and <r^alpha> = r_alpha.

    Maximizes W_{1+k/d} for -d < k < 0; requires alpha inside the window
    alpha > -k d / (d + k), outside which the candidate is not
    normalizable together with a finite <r^alpha>.
    """
    _validate_orders(d, alpha)
    if not -d < k < 0:
        raise DomainError(f"maximizer_density requires -d < k < 0, got {k}")
    window = constants.negative_order_window(d, k)
    if alpha <= window:
        raise DomainError(
            f"alpha = {alpha} is outside the admissible window alpha > {window:.6g} "
            f"for d = {d}, k = {k}: the extremal candidate is not integrable")
    e = d / k
    t = -e  # positive exponent of (a^alpha + r^alpha)^-t
    a = _scale_from_ratio(d, alpha, alpha * (d + k) / (d * (-k)) - 1.0, N, r_alpha)
    C = N * alpha / (omega(d) * a ** (d + alpha * e) * beta(d / alpha, t - d / alpha))
    a_alpha = a ** alpha

    def rho(r):
        r = np.asarray(r, dtype=float)
        return C * np.power(a_alpha + np.power(r, alpha), e)

    def drho(r):
        r = np.asarray(r, dtype=float)
        return C * e * alpha * np.power(r, alpha - 1.0) \
            * np.power(a_alpha + np.power(r, alpha), e - 1.0)

    return RadialDensity(d=d, N=N, rho=rho, drho=drho,
                         analytic_moments={0.0: N, float(alpha): r_alpha},
                         support_hint=a, tail_exponent=alpha * t,
                         label=f"extremal-max(d={d},alpha={alpha},k={k})")


def solve_scale_by_root(d: int, alpha: float, k: float,
                        N: float = 1.0, r_alpha: float = 1.0) -> float:
    """Root-finding fallback for the extremal scale parameter a.

    Solves the ratio constraint <r^alpha>/N = g(a) by bisection-backed
    bracketing instead of the Beta-function reduction; used as an
    independent cross-check of the closed-form solve.
    """
    _validate_orders(d, alpha)
    if k > 0:
        e = d / k

        def ratio(a):
            num = beta(d / alpha + 1.0, e + 1.0)
            den = beta(d / alpha, e + 1.0)
            return a ** alpha * num / den
    elif -d < k < 0:
        e = d / k
        t = -e

        def ratio(a):
            num = beta(d / alpha + 1.0, t - d / alpha - 1.0)
            den = beta(d / alpha, t - d / alpha)
            return a ** alpha * num / den
    else:
        raise DomainError(f"momentum order must satisfy -d < k, k != 0, got {k}")

    target = r_alpha / N
    return solve_root(lambda a: ratio(a) - target, (1e-8, 1e8))


def _reference_W(dens: RadialDensity, d: int, k: float) -> float:
    m = 1.0 + k / d
    return entropic_moment(dens, m).value


@lru_cache(maxsize=None)
def _extremal_F_cached(d: int, alpha: float, k: float) -> float:
    dens = minimizer_density(d, alpha, k, N=1.0, r_alpha=1.0)
    return _reference_W(dens, d, k)


def extremal_F(d: int, alpha: float, k: float) -> ExtremalConstant:
    """Numeric variational coefficient of the entropic-moment lower bound
    (k > 0), read off the reconstructed minimizer at reference constraints
    N = 1, <r^alpha> = 1, compared against the closed form."""
    numeric = _extremal_F_cached(d, float(alpha), float(k))
    closed = constants.entropic_lower_coeff(d, alpha, k)
    return ExtremalConstant(d, alpha, k, numeric, closed,
                            abs(numeric - closed) / abs(closed))


@lru_cache(maxsize=None)
def _extremal_G_cached(d: int, alpha: float, k: float) -> float:
    dens = maximizer_density(d, alpha, k, N=1.0, r_alpha=1.0)
    return _reference_W(dens, d, k)


def extremal_G(d: int, alpha: float, k: float) -> ExtremalConstant:
    """Numeric variational coefficient of the entropic-moment upper bound
    (-d < k < 0); the closed form is attached when it is real-evaluable."""
    numeric = _extremal_G_cached(d, float(alpha), float(k))
    closed = constants.entropic_upper_coeff_closed(d, alpha, k)
    if closed.valid:
        return ExtremalConstant(d, alpha, k, numeric, closed.value,
                                abs(numeric - closed.value) / abs(closed.value))
    return ExtremalConstant(d, alpha, k, numeric)
