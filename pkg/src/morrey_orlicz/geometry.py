"""Balls in R^n: volumes, pairwise intersections and radial integrals."""

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .errors import DivergenceError

__all__ = [
    "Ball", "unit_ball_volume", "ball_volume", "cap_volume", "lens_volume",
    "intersection_volume", "sphere_fraction", "sphere_fraction_scalar", "radial_integral",
]


@dataclass(frozen=True)
class Ball:
    """Open ball ``{x : |x - center| < radius}``."""

    center: tuple
    radius: float

    def __post_init__(self):
        c = tuple(float(x) for x in np.atleast_1d(self.center))
        if not c:
            raise ValueError("ball needs at least one coordinate")
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius}")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", float(self.radius))

    @classmethod
    def centered(cls, radius, dim):
        return cls((0.0,) * dim, radius)

    @property
    def dim(self):
        return len(self.center)

    def distance_to(self, point):
        return float(np.linalg.norm(np.asarray(self.center) - np.asarray(point, dtype=float)))


def unit_ball_volume(n):
    """``|B(0, 1)| = pi**(n/2) / Gamma(n/2 + 1)``."""
    if int(n) != n or n < 1:
        raise ValueError(f"dimension must be a positive integer, got {n}")
    if n == 1:
        return 2.0
    if n == 2:
        return math.pi
    return math.exp(0.5 * n * math.log(math.pi) - math.lgamma(0.5 * n + 1.0))


def ball_volume(b_or_radius, dim=None):
    """Volume of a :class:`Ball`, or of a radius in dimension ``dim``."""
    if isinstance(b_or_radius, Ball):
        return unit_ball_volume(b_or_radius.dim) * b_or_radius.radius ** b_or_radius.dim
    return unit_ball_volume(dim) * np.asarray(b_or_radius, dtype=float) ** dim


def cap_volume(R, h, n, method="closed"):
    """Volume of the cap of height ``h`` (``0 <= h <= 2R``) of a radius-``R`` ball."""
    h = min(max(h, 0.0), 2.0 * R)
    if h == 0.0:
        return 0.0
    full = unit_ball_volume(n) * R ** n
    if h > R:
        return full - cap_volume(R, 2.0 * R - h, n, method)
    # thin disc caps cancel catastrophically in the closed form; the beta form is stable
    if method == "closed" and (n in (1, 3) or (n == 2 and h >= 1e-3 * R)):
        if n == 1:
            return h
        if n == 2:
            return R * R * math.acos((R - h) / R) - (R - h) * math.sqrt(max(2 * R * h - h * h, 0.0))
        return math.pi * h * h * (3.0 * R - h) / 3.0
    x = (2.0 * R * h - h * h) / (R * R)
    return 0.5 * full * special.betainc(0.5 * (n + 1), 0.5, min(x, 1.0))


def lens_volume(r1, r2, d, n, method="closed"):
    """Volume of the intersection of two balls with radii ``r1, r2`` at distance ``d``."""
    if d >= r1 + r2:
        return 0.0
    if d <= abs(r1 - r2):
        return unit_ball_volume(n) * min(r1, r2) ** n
    if n == 1:
        return r1 + r2 - d
    # signed distance from the first center to the separating hyperplane
    c1 = (d * d + r1 * r1 - r2 * r2) / (2.0 * d)
    return cap_volume(r1, r1 - c1, n, method) + cap_volume(r2, r2 - (d - c1), n, method)


def intersection_volume(b1, b2, method="closed"):
    """``|b1 ∩ b2|`` for two balls of the same dimension."""
    if b1.dim != b2.dim:
        raise ValueError(f"dimension mismatch: {b1.dim} vs {b2.dim}")
    d = float(np.linalg.norm(np.subtract(b1.center, b2.center)))
    return lens_volume(b1.radius, b2.radius, d, b1.dim, method)


def sphere_fraction(s, d, R, n):
    """Fraction of the sphere ``|y - c| = s`` inside a ball ``B(z, R)``, ``|z - c| = d``.

    Vectorised over ``s``.  This is ``d/ds |B(c, s) ∩ B(z, R)|`` divided by
    the sphere area ``n v_n s**(n-1)``.
    """
    s = np.asarray(s, dtype=float)
    if d == 0.0:
        return np.where(s < R, 1.0, 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        kappa = (s * s + d * d - R * R) / (2.0 * s * d)
    kappa = np.where(s > 0, kappa, np.where(d < R, -np.inf, np.inf))
    k = np.clip(kappa, -1.0, 1.0)
    if n == 1:
        mid = np.full_like(k, 0.5)
    elif n == 2:
        mid = np.arccos(k) / math.pi
    elif n == 3:
        mid = 0.5 * (1.0 - k)
    else:
        upper = 0.5 * special.betainc(0.5 * (n - 1), 0.5, 1.0 - k * k)
        mid = np.where(k >= 0, upper, 1.0 - upper)
    return np.where(kappa <= -1.0, 1.0, np.where(kappa >= 1.0, 0.0, mid))


def sphere_fraction_scalar(s, d, R, n):
    """Scalar :func:`sphere_fraction` using only ``math`` (fast inner loops)."""
    if d == 0.0:
        return 1.0 if s < R else 0.0
    if s <= 0.0:
        return 1.0 if d < R else 0.0
    kappa = (s * s + d * d - R * R) / (2.0 * s * d)
    if kappa <= -1.0:
        return 1.0
    if kappa >= 1.0:
        return 0.0
    if n == 1:
        return 0.5
    if n == 2:
        return math.acos(kappa) / math.pi
    if n == 3:
        return 0.5 * (1.0 - kappa)
    upper = 0.5 * float(special.betainc(0.5 * (n - 1), 0.5, 1.0 - kappa * kappa))
    return upper if kappa >= 0 else 1.0 - upper


def _probe_exponent(h, r):
    s1, s2 = r * 1e-12, r * 1e-9
    h1, h2 = abs(float(h(s1))), abs(float(h(s2)))
    if h1 == 0.0 or h2 == 0.0 or not (math.isfinite(h1) and math.isfinite(h2)):
        if not (math.isfinite(h1) and math.isfinite(h2)):
            return -math.inf
        return 0.0
    return math.log(h2 / h1) / math.log(s2 / s1)


def radial_integral(g, r, n, breakpoints=(), rtol=1e-10):
    """``∫_{B_r} g(|x|) dx = n v_n ∫_0^r g(s) s^(n-1) ds``.

    An integrable power singularity ``g(s) s^(n-1) ~ s^beta`` with
    ``-1 < beta < 0`` at the origin is removed by the substitution
    ``s = r tau^k`` with ``k = 2/(1 + beta)``.  A probe exponent
    ``beta <= -1`` raises :class:`DivergenceError`.
    """
    if r <= 0:
        return 0.0
    area = n * unit_ball_volume(n)

    def h(s):
        return g(s) * s ** (n - 1)

    beta = _probe_exponent(h, r)
    if beta <= -1.0 + 1e-6:
        raise DivergenceError(f"radial integrand behaves like s^{beta:.3f} at 0")
    pts = sorted(p for p in breakpoints if 0 < p < r)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        if beta < 0:
            k = 2.0 / (1.0 + beta)
            tpts = [(p / r) ** (1.0 / k) for p in pts]
            val, _ = integrate.quad(lambda t: h(r * t ** k) * r * k * t ** (k - 1.0) if t > 0 else 0.0,
                                    0.0, 1.0, points=tpts or None, epsabs=0.0,
                                    epsrel=rtol, limit=400)
        else:
            val, _ = integrate.quad(h, 0.0, r, points=pts or None, epsabs=0.0,
                                    epsrel=rtol, limit=400)
    return area * val
