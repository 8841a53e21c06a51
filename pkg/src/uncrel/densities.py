"""Analytic model densities with known conjugate partners, plus the loader
for tabulated radial densities.

All densities are radial and live in natural units (hbar = m = 1).  A
RadialDensity is immutable after construction and its evaluation is pure,
so instances can be shared freely across concurrent sweeps.  Evaluation
callables accept scalars or numpy arrays.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace
from typing import Callable, Mapping

import numpy as np

from .constants import SystemConfig
from .errors import DomainError, FormatError
from .mathcore import MonotoneInterpolant, interpolate_monotone, omega

__all__ = [
    "RadialDensity",
    "DensityPair",
    "gaussian_pair",
    "hydrogenic_pair",
    "exponential_radial",
    "harmonic_fermions_1d",
    "load_tabulated",
    "scale_density",
    "scale_pair",
    "hermite_function",
]


@dataclass(frozen=True, eq=False)
class RadialDensity:
    """A radial probability density in d dimensions normalized to N particles.

    rho and drho map radius to density value and radial derivative;
    analytic_moments, when present, maps moment orders to exact values of
    <r^order> for the quadrature fast path; support_hint is the decay
    scale steering tail handling; support restricts the density to a
    finite radial interval; knots marks interpolation breakpoints of
    tabulated data.  Instances compare by identity (eq=False), which lets
    the functionals memoize quadrature results per density object.
    """

    d: int
    N: float
    rho: Callable
    drho: Callable
    analytic_moments: Mapping[float, float] | None = None
    support_hint: float = 1.0
    support: tuple[float, float] | None = None
    knots: np.ndarray | None = field(default=None, repr=False)
    tail_exponent: float | None = None
    label: str = ""

    def __call__(self, r):
        return self.rho(r)

    def derivative(self, r):
        return self.drho(r)


@dataclass(frozen=True)
class DensityPair:
    """Conjugate position/momentum densities of one state.

    real_wavefunction marks states whose position (or momentum)
    wavefunction is real, the precondition of the saturated
    Fisher-product bound.
    """

    position: RadialDensity
    momentum: RadialDensity
    real_wavefunction: bool = False
    label: str = ""

    def __post_init__(self):
        if self.position.d != self.momentum.d:
            raise DomainError("conjugate densities must share the dimension")
        if not math.isclose(self.position.N, self.momentum.N, rel_tol=1e-12):
            raise DomainError("conjugate densities must share the particle count")


def _gaussian_radial(d: int, sigma2: float, N: float, label: str) -> RadialDensity:
    norm = N * (2.0 * math.pi * sigma2) ** (-d / 2.0)

    def rho(r):
        r = np.asarray(r, dtype=float)
        return norm * np.exp(-r * r / (2.0 * sigma2))

    def drho(r):
        r = np.asarray(r, dtype=float)
        return -r / sigma2 * norm * np.exp(-r * r / (2.0 * sigma2))

    # <r^a> = N (2 sigma^2)^(a/2) Gamma((a+d)/2) / Gamma(d/2)
    moments = {
        float(a): N * (2.0 * sigma2) ** (a / 2.0)
        * math.gamma((a + d) / 2.0) / math.gamma(d / 2.0)
        for a in (-2, -1, 0, 1, 2, 3, 4) if a > -d
    }
    return RadialDensity(d=d, N=N, rho=rho, drho=drho, analytic_moments=moments,
                         support_hint=4.0 * math.sqrt(sigma2), label=label)


def gaussian_pair(d: int, a: float, N: float = 1.0) -> DensityPair:
    """Minimum-uncertainty Gaussian state: position wavefunction
    proportional to exp(-r^2 / (4 a^2)), exact Fourier-conjugate partner.

    Per particle, <r^2> = d a^2 and <p^2> = d / (4 a^2).
    """
    if a <= 0:
        raise DomainError(f"length scale must be positive, got {a}")
    if N <= 0:
        raise DomainError(f"particle count must be positive, got {N}")
    pos = _gaussian_radial(d, a * a, N, label=f"gaussian(d={d},a={a})")
    mom = _gaussian_radial(d, 1.0 / (4.0 * a * a), N, label=f"gaussian-mom(d={d},a={a})")
    return DensityPair(pos, mom, real_wavefunction=True, label=f"gaussian(d={d},a={a},N={N})")


def hydrogenic_pair(Z: float) -> DensityPair:
    """Ground-state hydrogenic densities (d = 3, N = 1): position
    (Z^3/pi) e^(-2 Z r), momentum (8 Z^5 / pi^2) (Z^2 + p^2)^-4."""
    if Z <= 0:
        raise DomainError(f"charge must be positive, got {Z}")

    cpos = Z ** 3 / math.pi

    def rho(r):
        r = np.asarray(r, dtype=float)
        return cpos * np.exp(-2.0 * Z * r)

    def drho(r):
        r = np.asarray(r, dtype=float)
        return -2.0 * Z * cpos * np.exp(-2.0 * Z * r)

    # <r^a> = Gamma(a + 3) / (2^(a+1) Z^a) for a > -3
    pos_moments = {float(a): math.gamma(a + 3.0) / (2.0 ** (a + 1.0) * Z ** a)
                   for a in (-2, -1, 0, 1, 2, 3, 4)}
    pos = RadialDensity(d=3, N=1.0, rho=rho, drho=drho,
                        analytic_moments=pos_moments, support_hint=4.0 / (2.0 * Z),
                        label=f"hydrogenic(Z={Z})")

    cmom = 8.0 * Z ** 5 / math.pi ** 2

    def gam(p):
        p = np.asarray(p, dtype=float)
        return cmom / (Z * Z + p * p) ** 4

    def dgam(p):
        p = np.asarray(p, dtype=float)
        return -8.0 * p * cmom / (Z * Z + p * p) ** 5

    # <p^k> = (16 Z^k / pi) B((k+3)/2, (5-k)/2) for -3 < k < 5
    from .mathcore import beta as _beta

    mom_moments = {float(k): 16.0 * Z ** k / math.pi
                   * _beta((k + 3.0) / 2.0, (5.0 - k) / 2.0)
                   for k in (-2, -1, 0, 1, 2, 3, 4)}
    mom = RadialDensity(d=3, N=1.0, rho=gam, drho=dgam,
                        analytic_moments=mom_moments, support_hint=3.0 * Z,
                        tail_exponent=8.0, label=f"hydrogenic-mom(Z={Z})")
    return DensityPair(pos, mom, real_wavefunction=True, label=f"hydrogenic(Z={Z})")


def exponential_radial(d: int, lam: float, N: float = 1.0) -> RadialDensity:
    """Position-only exponential model rho(r) = N lam^d e^(-lam r) / (Omega_d Gamma(d));
    normalization is exact by construction and <r^a> = N Gamma(d+a) / (lam^a Gamma(d))."""
    if lam <= 0:
        raise DomainError(f"decay rate must be positive, got {lam}")
    if N <= 0:
        raise DomainError(f"particle count must be positive, got {N}")
    c = N * lam ** d / (omega(d) * math.gamma(d))

    def rho(r):
        r = np.asarray(r, dtype=float)
        return c * np.exp(-lam * r)

    def drho(r):
        r = np.asarray(r, dtype=float)
        return -lam * c * np.exp(-lam * r)

    moments = {float(a): N * math.gamma(d + a) / (lam ** a * math.gamma(d))
               for a in (-2, -1, 0, 1, 2, 3, 4) if a > -d}
    return RadialDensity(d=d, N=N, rho=rho, drho=drho, analytic_moments=moments,
                         support_hint=8.0 / lam, label=f"exponential(d={d},lam={lam})")


def hermite_function(n: int, x):
    """Normalized 1-d harmonic-oscillator eigenfunction psi_n(x).

    Three-term recurrence on the normalized functions; stable (no
    factorial overflow) for the level range used here.
    """
    x = np.asarray(x, dtype=float)
    p0 = math.pi ** -0.25 * np.exp(-0.5 * x * x)
    if n == 0:
        return p0
    p1 = math.sqrt(2.0) * x * p0
    for m in range(2, n + 1):
        p0, p1 = p1, np.sqrt(2.0 / m) * x * p1 - np.sqrt((m - 1.0) / m) * p0
    return p1


def _oscillator_occupations(N: int, q: int) -> list[tuple[int, int]]:
    occ, left, level = [], N, 0
    while left > 0:
        w = min(q, left)
        occ.append((level, w))
        left -= w
        level += 1
    return occ


def harmonic_fermions_1d(N: int, q: int) -> DensityPair:
    """Ground state of N spin-(q-1)/2 fermions in a 1-d harmonic well
    (natural units), levels filled bottom-up with at most q per level.

    The one-particle density is the occupation-weighted sum of squared
    oscillator eigenfunctions; the momentum density coincides with it
    pointwise because Hermite functions are Fourier eigenfunctions.
    """
    if int(N) != N or N < 1:
        raise DomainError(f"particle number must be an integer >= 1, got {N}")
    if q not in (1, 2):
        raise DomainError(f"spin multiplicity must be 1 or 2, got {q}")
    occ = _oscillator_occupations(int(N), int(q))
    top = occ[-1][0]

    def rho(x):
        x = np.asarray(x, dtype=float)
        p0 = math.pi ** -0.25 * np.exp(-0.5 * x * x)
        p1 = math.sqrt(2.0) * x * p0
        total = occ[0][1] * p0 * p0
        prev, cur = p0, p1
        weights = dict(occ)
        for m in range(1, top + 1):
            if m in weights:
                total = total + weights[m] * cur * cur
            if m < top:
                prev, cur = cur, np.sqrt(2.0 / (m + 1)) * x * cur - np.sqrt(m / (m + 1.0)) * prev
        return total

    def drho(x):
        # d/dx psi_n^2 = 2 psi_n (sqrt(2n) psi_{n-1} - x psi_n)
        x = np.asarray(x, dtype=float)
        p0 = math.pi ** -0.25 * np.exp(-0.5 * x * x)
        psis = [p0]
        if top >= 1:
            psis.append(math.sqrt(2.0) * x * p0)
        for m in range(2, top + 1):
            psis.append(np.sqrt(2.0 / m) * x * psis[-1] - np.sqrt((m - 1.0) / m) * psis[-2])
        total = 0.0
        for n, w in occ:
            below = psis[n - 1] if n >= 1 else 0.0
            total = total + w * 2.0 * psis[n] * (np.sqrt(2.0 * n) * below - x * psis[n])
        return total

    # total <x^2> = total <p^2> = sum over occupied levels of w (n + 1/2)
    second = sum(w * (n + 0.5) for n, w in occ)
    moments = {0.0: float(N), 2.0: second}
    hint = math.sqrt(2.0 * top + 1.0) + 4.0
    pos = RadialDensity(d=1, N=float(N), rho=rho, drho=drho, analytic_moments=moments,
                        support_hint=hint, label=f"ho1d(N={N},q={q})")
    mom = replace(pos, label=f"ho1d-mom(N={N},q={q})")
    return DensityPair(pos, mom, real_wavefunction=True, label=f"ho1d(N={N},q={q})")


def load_tabulated(cfg: SystemConfig, r, rho_values) -> RadialDensity:
    """Interpolant-backed density from a strictly increasing (r, rho) table.

    The normalization is measured (not rescaled) and stored on the
    returned density; a measured count deviating from cfg.N by more than
    1% emits a warning.
    """
    r = np.asarray(r, dtype=float)
    rho_values = np.asarray(rho_values, dtype=float)
    if r.ndim != 1 or r.shape != rho_values.shape:
        raise FormatError("tabulated density must be two equal-length columns")
    if r.size < 8:
        raise FormatError(f"tabulated density needs at least 8 samples, got {r.size}")
    if r[0] < 0:
        raise FormatError("radii must be non-negative")
    interp = interpolate_monotone(r, rho_values)  # validates ordering and sign

    lo, hi = float(r[0]), float(r[-1])

    def rho(x):
        x = np.asarray(x, dtype=float)
        v = interp(np.clip(x, lo, hi))
        v = np.where((x < lo) | (x > hi), 0.0, v)
        return np.maximum(v, 0.0)

    def drho(x):
        x = np.asarray(x, dtype=float)
        v = interp.derivative(np.clip(x, lo, hi))
        return np.where((x < lo) | (x > hi), 0.0, v)

    from .mathcore import gauss_cells

    measured = omega(cfg.d) * gauss_cells(lambda x: interp(x) * x ** (cfg.d - 1), r)
    if measured <= 0:
        raise DomainError("tabulated density has zero measured normalization")
    if abs(measured - cfg.N) > 0.01 * cfg.N:
        warnings.warn(
            f"measured normalization {measured:.6g} deviates from declared "
            f"N = {cfg.N:.6g} by more than 1%", stacklevel=2)
    tail = max(hi / 8.0, float(np.median(np.diff(r))) * 8.0)
    return RadialDensity(d=cfg.d, N=float(measured), rho=rho, drho=drho,
                         support_hint=tail, support=(lo, hi), knots=r,
                         label="tabulated")


def scale_density(dens: RadialDensity, lam: float) -> RadialDensity:
    """Unit-preserving rescaling rho_lam(r) = lam^d rho(lam r).

    Keeps the particle count; radial moments of order a pick up lam^-a,
    entropic moments of order m pick up lam^(d(m-1)), and the Fisher
    information picks up lam^2.
    """
    if lam <= 0:
        raise DomainError(f"scale factor must be positive, got {lam}")
    d = dens.d
    f, df = dens.rho, dens.drho

    def rho(r):
        return lam ** d * f(lam * np.asarray(r, dtype=float))

    def drho(r):
        return lam ** (d + 1) * df(lam * np.asarray(r, dtype=float))

    moments = None
    if dens.analytic_moments is not None:
        moments = {a: v * lam ** (-a) for a, v in dens.analytic_moments.items()}
    support = None
    if dens.support is not None:
        support = (dens.support[0] / lam, dens.support[1] / lam)
    knots = None if dens.knots is None else dens.knots / lam
    return RadialDensity(d=d, N=dens.N, rho=rho, drho=drho, analytic_moments=moments,
                         support_hint=dens.support_hint / lam, support=support,
                         knots=knots, tail_exponent=dens.tail_exponent,
                         label=f"{dens.label}*scale({lam})")


def scale_pair(pair: DensityPair, lam: float) -> DensityPair:
    """Conjugate rescaling: position stretched by lam, momentum by 1/lam."""
    return DensityPair(scale_density(pair.position, lam),
                       scale_density(pair.momentum, 1.0 / lam),
                       real_wavefunction=pair.real_wavefunction,
                       label=f"{pair.label}*scale({lam})")
