"""Riesz potential, centred maximal function and the Hedberg estimate.

Two independent routes evaluate ``I_alpha f(x) = ∫ f(y) |x - y|**(alpha - n) dy``:

* ``"parts"`` writes the kernel as a layer cake in ``rho = |x - y|``,
  ``I = (n - alpha) ∫_0^inf rho**(alpha - n - 1) A(rho) drho`` with
  ``A(rho) = ∫_{B(x, rho)} f``.  Near ``x`` and beyond the support ``A`` is
  known exactly, leaving a finite quadrature in between.
* ``"spherical"`` averages the kernel over spheres about each atom center;
  the mean of ``|x - y|**(alpha - n)`` over ``|y - c| = s`` is a Gauss
  hypergeometric function of ``min(s, d) / max(s, d)``, ``d = |x - c|``.

The default picks ``parts`` for step functions of compact support and
``spherical`` otherwise.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .errors import ConstraintError, DivergenceError
from .geometry import Ball, ball_volume, unit_ball_volume
from .testfunction import TestFunction

__all__ = [
    "OperatorParams", "maximal_function", "riesz_potential", "hedberg_constant",
    "hedberg_gap", "ball_average", "sphere_mean_kernel",
]

QUAD_RTOL = 1e-11
MAX_SCAN_POINTS = 97
MAX_REFINE = 4


@dataclass(frozen=True)
class OperatorParams:
    """Order ``alpha`` of the Riesz potential in dimension ``dim``."""

    alpha: float
    dim: int

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.dim}")
        if not 0.0 < self.alpha < self.dim:
            raise ConstraintError("0 < alpha < n", f"alpha={self.alpha}, n={self.dim}")
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "dim", int(self.dim))


def hedberg_constant(n, alpha):
    """``C_H = 2**n v_n / (2**alpha - 1)``."""
    OperatorParams(alpha, n)
    return 2.0 ** n * unit_ball_volume(n) / (2.0 ** alpha - 1.0)


def _point(x, n):
    p = np.atleast_1d(np.asarray(x, dtype=float))
    if p.shape != (n,):
        raise ValueError(f"point must have {n} coordinates")
    return p


# maximal function ---------------------------------------------------------

def ball_average(f, x, r):
    """Mean of ``|f|`` over ``B(x, r)``."""
    b = Ball(tuple(np.atleast_1d(x)), r)
    return f.ball_integral(b, "abs") / ball_volume(b)


def _singular_at(f, x):
    for a in f.atoms:
        if a.beta < 0 and a.inner == 0.0 and np.array_equal(np.asarray(a.center), x):
            return True
    return False


def maximal_function(f, x, n=None):
    """Centred maximal function ``sup_r`` of averages of ``|f|`` on ``B(x, r)``.

    Candidate radii are the distances from ``x`` to every atom boundary
    together with a log grid; local maxima of the scan are refined by
    golden-section search on the neighbouring bracket.
    """
    n = f.dim if n is None else n
    if n != f.dim:
        raise ValueError("dimension mismatch")
    x = _point(x, n)
    if f.is_zero():
        return 0.0
    if _singular_at(f, x):
        return math.inf
    if all(math.isinf(a.outer) and a.inner == 0.0 and a.beta == 0.0 for a in f.atoms):
        return abs(sum(a.coef for a in f.atoms))
    scale = max(f.support_radius(about=x), 1e-300)
    if math.isinf(scale):
        scale = 1.0 + max((a.inner for a in f.atoms), default=0.0) + float(np.linalg.norm(x))
    bps = [b for b in f.radial_breakpoints(about=x) if b > 0]
    grid = np.unique(np.concatenate([scale * np.logspace(-6, 2, MAX_SCAN_POINTS), bps]))
    vals = np.array([ball_average(f, x, r) for r in grid])
    best = float(np.max(vals))
    # refine the largest interior local maxima
    idx = [i for i in range(1, len(grid) - 1) if vals[i] >= vals[i - 1] and vals[i] >= vals[i + 1]]
    idx = sorted(idx, key=lambda i: -vals[i])[:MAX_REFINE]
    from ._numerics import golden_max_scalar
    for i in idx:
        for lo, hi in ((grid[i - 1], grid[i]), (grid[i], grid[i + 1])):
            _, v = golden_max_scalar(lambda s: ball_average(f, x, math.exp(s)), math.log(lo),
                                     math.log(hi), rtol=1e-12)
            best = max(best, v)
    return best


# Riesz potential ----------------------------------------------------------

def sphere_mean_kernel(s, d, n, alpha):
    """Mean of ``|x - y|**(alpha - n)`` over the sphere ``|y - c| = s``, ``|x - c| = d``."""
    s = np.asarray(s, dtype=float)
    big = np.maximum(s, d)
    small = np.minimum(s, d)
    with np.errstate(divide="ignore", invalid="ignore"):
        z = np.where(big > 0, small / big, 0.0)
        val = big ** (alpha - n) * special.hyp2f1(0.5 * (n - alpha), 1.0 - 0.5 * alpha, 0.5 * n, z * z)
    return val


def _check_convergence(f, x, prm):
    n, alpha = prm.dim, prm.alpha
    far = {}
    for a in f.atoms:
        if a.inner == 0.0 and a.beta <= -n:
            raise DivergenceError(f"f is not locally integrable near {a.center}")
        if math.isinf(a.outer):
            far[a.beta] = far.get(a.beta, 0.0) + a.coef
        if a.inner == 0.0 and a.beta + alpha <= 0 and np.array_equal(np.asarray(a.center), x):
            raise DivergenceError("kernel and f are jointly non-integrable at x")
    for beta, c in far.items():
        if c != 0.0 and beta + alpha >= 0:
            raise DivergenceError(f"far field decays like |y|^{beta}: the potential diverges")


def _atom_spherical(a, x, prm):
    n, alpha = prm.dim, prm.alpha
    d = float(np.linalg.norm(x - np.asarray(a.center)))
    lo, hi, beta = a.inner, a.outer, a.beta
    area = n * unit_ball_volume(n)
    if d == 0.0:
        e = beta + alpha
        upper = 0.0 if math.isinf(hi) else hi ** e
        return a.coef * area * (upper - lo ** e) / e

    def h(s):
        return s ** (beta + n - 1) * float(sphere_mean_kernel(s, d, n, alpha))

    total = 0.0
    cuts = [lo] + [p for p in (d,) if lo < p < hi] + [hi]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for s0, s1 in zip(cuts[:-1], cuts[1:]):
            if math.isinf(s1):
                # split once more so the infinite part starts away from d
                mid = max(2.0 * d, s0 + 1.0)
                v1, _ = integrate.quad(h, s0, mid, epsabs=0.0, epsrel=QUAD_RTOL, limit=400)
                v2, _ = integrate.quad(h, mid, math.inf, epsabs=0.0, epsrel=QUAD_RTOL, limit=400)
                total += v1 + v2
            else:
                v, _ = integrate.quad(h, s0, s1, epsabs=0.0, epsrel=QUAD_RTOL, limit=400)
                total += v
    return a.coef * area * total


def _on_boundary(f, x):
    for a in f.atoms:
        d = float(np.linalg.norm(x - np.asarray(a.center)))
        for e in (a.inner, a.outer):
            if 0 < e < math.inf and abs(d - e) <= 1e-14 * max(1.0, e):
                return True
    return False


def _parts(f, x, prm, radius=None, absolute=False):
    """Layer-cake route, optionally truncated to ``|y - x| <= radius``."""
    n, alpha = prm.dim, prm.alpha
    mode = "abs" if absolute else None

    def A(rho):
        return f.ball_integral(Ball(tuple(x), rho), mode)

    bps = f.radial_breakpoints(about=x)
    outer = f.support_radius(about=x)
    rho0 = bps[0] if bps else outer
    if radius is not None:
        rho0 = min(rho0, radius)
    total = 0.0
    if f.is_step and not _on_boundary(f, x):
        # A(rho) = f(x) v_n rho^n below the first breakpoint
        fx = float(f(x)) if rho0 > 0 else 0.0
        if absolute:
            fx = abs(fx)
        total += (n - alpha) * fx * unit_ball_volume(n) * rho0 ** alpha / alpha
        start = rho0
    else:
        start = 0.0
    stop = outer if radius is None else min(outer, radius)
    if stop > start:
        pts = [b for b in bps if start < b < stop]
        if start == 0.0:
            # integrable singularity of rho^(alpha-n-1) A(rho) at the origin
            k = 2.0 / alpha
            tpts = [(p / stop) ** (1.0 / k) for p in pts]

            def g(t):
                if t <= 0:
                    return 0.0
                rho = stop * t ** k
                return rho ** (alpha - n - 1) * A(rho) * stop * k * t ** (k - 1.0)

            with warnings.catch_warnings():
                warnings.simplefilter("ignore", integrate.IntegrationWarning)
                val, _ = integrate.quad(g, 0.0, 1.0, points=tpts or None, epsabs=0.0,
                                        epsrel=1e-10, limit=400)
        else:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", integrate.IntegrationWarning)
                val, _ = integrate.quad(lambda r: r ** (alpha - n - 1) * A(r), start, stop,
                                        points=pts or None, epsabs=0.0, epsrel=1e-10, limit=400)
        total += (n - alpha) * val
    if radius is None:
        # beyond the support A is the total integral
        total += A(outer) * outer ** (alpha - n) if outer > 0 else 0.0
    else:
        if radius > outer > 0:
            # A is constant between the support edge and the truncation radius
            total += A(outer) * (outer ** (alpha - n) - radius ** (alpha - n))
        total += radius ** (alpha - n) * A(radius)
    return total


def riesz_potential(f, x, prm, radius=None, absolute=False, method="auto"):
    """``I_alpha f(x)``, or its truncation to ``B(x, radius)``.

    ``absolute=True`` integrates ``|f|`` instead of ``f``; truncation and
    ``absolute`` use the layer-cake route.  Raises
    :class:`DivergenceError` when the integral diverges at ``x`` or at
    infinity.
    """
    if f.dim != prm.dim:
        raise ValueError("dimension mismatch")
    x = _point(x, prm.dim)
    if f.is_zero():
        return 0.0
    _check_convergence(f, x, prm)
    if method == "auto":
        compact = math.isfinite(f.support_radius())
        method = "parts" if (radius is not None or absolute or (f.is_step and compact)) else "spherical"
    if method == "parts":
        if math.isinf(f.support_radius()) and radius is None:
            raise ValueError("the layer-cake route needs compact support or a truncation radius")
        return _parts(f, x, prm, radius=radius, absolute=absolute)
    if method == "spherical":
        if radius is not None or absolute:
            raise ValueError("the spherical route evaluates the full signed potential only")
        return sum(_atom_spherical(a, x, prm) for a in f.atoms)
    raise ValueError(f"unknown method {method!r}")


def hedberg_gap(f, x, r, prm):
    """Both sides of ``∫_{|y-x|<=r} |f||x-y|**(alpha-n) <= C_H r**alpha Mf(x)``."""
    if f.is_zero():
        return {"lhs": 0.0, "rhs": 0.0}
    lhs = riesz_potential(f, x, prm, radius=r, absolute=True)
    rhs = hedberg_constant(prm.dim, prm.alpha) * r ** prm.alpha * maximal_function(f, x)
    return {"lhs": lhs, "rhs": rhs}
