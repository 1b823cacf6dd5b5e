"""Modulars, Luxemburg norms on balls and central Morrey-Orlicz norms.

For a ball ``B`` and exponent ``lam`` the Luxemburg-type norm is

    ||f||_{Phi,lam,B} = inf{eps > 0 : |B|**(-lam) * ∫_B Phi(|f|/eps) <= 1},

and the central norm is its supremum over origin-centred balls.  The
closed forms for indicators of centred balls are provided separately and
serve as oracles for the numerical route.
"""

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np
from scipy import optimize

from ._numerics import LOG_HUGE, LOG_TINY, golden_max_scalar
from .errors import ConstraintError, DivergenceError
from .geometry import Ball, ball_volume, intersection_volume, unit_ball_volume
from .orlicz import OrliczSpec, conjugate
from .testfunction import TestFunction, _line_integral

__all__ = [
    "MorreyParams", "CentralNorm", "modular", "luxemburg_norm", "central_norm",
    "distribution_function", "weak_norm", "weak_central_norm", "chi_norm_closed",
    "chi_central_norm_closed", "chi_conjugate_bound", "holder_gap", "default_radius_grid",
]

RADIUS_GRID_POINTS = 129
RADIUS_GRID_DECADES = 3.0
NORM_XTOL = 1e-13  # absolute, in log(eps)


@dataclass(frozen=True)
class MorreyParams:
    """``(Phi, lam, dim)`` defining a central Morrey-Orlicz space."""

    phi: OrliczSpec
    lam: float
    dim: int

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.dim}")
        object.__setattr__(self, "dim", int(self.dim))
        object.__setattr__(self, "lam", float(self.lam))

    def conjugate(self):
        return replace(self, phi=conjugate(self.phi))


class CentralNorm(NamedTuple):
    value: float
    argmax_radius: float
    at_edge: bool


def _check_ball(f, prm, ball):
    if f.dim != prm.dim or ball.dim != prm.dim:
        raise ValueError("dimension mismatch between function, parameters and ball")


def modular(f, prm, ball, eps):
    """``|B|**(-lam) * ∫_B Phi(|f|/eps)``."""
    if not eps > 0:
        raise ValueError("eps must be positive")
    _check_ball(f, prm, ball)
    phi = prm.phi
    total = f.ball_integral(ball, lambda v: phi.evaluate(np.abs(v) / eps))
    return total / ball_volume(ball) ** prm.lam


def _safe_modular(f, prm, ball, eps):
    try:
        return modular(f, prm, ball, eps)
    except DivergenceError:
        return math.inf


def luxemburg_norm(f, prm, ball):
    """Luxemburg norm of ``f`` on ``ball``; ``inf`` when no ``eps`` works.

    The modular is nonincreasing in ``eps``; the threshold is bracketed by
    doubling steps in ``log eps`` from ``eps = 1`` and then located by
    Brent's method (continuous ``Phi``) or by bisection (``Phi`` with a
    jump, where the modular itself jumps).
    """
    _check_ball(f, prm, ball)
    if f.ball_integral(ball, "abs") == 0.0:
        return 0.0

    def ok(s):
        return _safe_modular(f, prm, ball, math.exp(s)) <= 1.0

    step = 1.0
    if ok(0.0):
        hi = 0.0
        lo = -step
        while ok(lo):
            hi = lo
            step *= 2.0
            lo = max(hi - step, LOG_TINY)
            if hi <= LOG_TINY:
                return 0.0
    else:
        lo = 0.0
        hi = step
        while not ok(hi):
            lo = hi
            step *= 2.0
            hi = min(lo + step, LOG_HUGE)
            if lo >= LOG_HUGE:
                return math.inf
    if prm.phi.is_orlicz:
        def g(s):
            m = _safe_modular(f, prm, ball, math.exp(s))
            return math.log(m) if m > 0 else -LOG_HUGE

        root = optimize.brentq(g, lo, hi, xtol=NORM_XTOL, rtol=4 * np.finfo(float).eps, maxiter=200)
        return math.exp(root)
    while hi - lo > NORM_XTOL:
        mid = 0.5 * (lo + hi)
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return math.exp(hi)


def default_radius_grid(f, num=RADIUS_GRID_POINTS, decades=RADIUS_GRID_DECADES):
    """Log-spaced radii scaled to the support of ``f`` plus its breakpoints."""
    scale = f.support_radius()
    if not (0 < scale < math.inf):
        scale = 1.0
    base = scale * np.logspace(-decades, decades, num)
    extra = [b for b in f.radial_breakpoints() if base[0] <= b <= base[-1]]
    return np.unique(np.concatenate([base, extra]))


def _sup_over_radii(norm_at, radius_grid, refine=True):
    radii = np.asarray(radius_grid, dtype=float)
    if radii.size == 0:
        raise ValueError("empty radius grid")
    vals = np.array([norm_at(r) for r in radii])
    i = int(np.argmax(vals))
    best_r, best = float(radii[i]), float(vals[i])
    at_edge = i in (0, radii.size - 1)
    if refine and math.isfinite(best) and radii.size >= 3 and not at_edge:
        r, v = golden_max_scalar(lambda s: norm_at(math.exp(s)), math.log(radii[i - 1]),
                                 math.log(radii[i + 1]), rtol=1e-12)
        if v > best:
            best_r, best = math.exp(r), v
    return CentralNorm(best, best_r, at_edge)


def central_norm(f, prm, radius_grid=None, refine=True):
    """``sup_r ||f||_{Phi,lam,B_r}`` over a radius grid, golden-refined."""
    if f.is_zero():
        return CentralNorm(0.0, math.nan, False)
    grid = default_radius_grid(f) if radius_grid is None else radius_grid
    return _sup_over_radii(lambda r: luxemburg_norm(f, prm, Ball.centered(r, prm.dim)), grid, refine)


def distribution_function(f, ball, u):
    """``|{y in ball : |f(y)| > u}|``."""
    return f.distribution(ball, u)


def weak_norm(f, prm, ball, num_levels=400):
    """Weak Luxemburg norm on ``ball``.

    Solving ``sup_u Phi(u/eps) d(u) <= |B|**lam`` for the least ``eps``
    gives ``sup_u u / Phi^{-1}(|B|**lam / d(u))``.  For step functions the
    supremum is attained as ``u`` increases to a level value, so it is an
    exact maximum over the level values.  Other functions are scanned on a
    log grid of levels and refined.
    """
    _check_ball(f, prm, ball)
    phi = prm.phi
    scale = ball_volume(ball) ** prm.lam

    def term(u, d):
        if d <= 0:
            return 0.0
        inv = float(phi.inverse(scale / d))
        return 0.0 if math.isinf(inv) else u / inv

    if f.is_step:
        levels = f.level_values(ball)
        best, prev = 0.0, 0.0
        for v in levels:
            best = max(best, term(v, f.distribution(ball, prev)))
            prev = v
        return best

    top = f.sup_abs(ball)
    if top == 0.0:
        return 0.0
    lo_exp = math.log10(top) - 12 if math.isfinite(top) else None
    if math.isinf(top):
        # singular center: levels spread both ways from a value next to it
        near = np.asarray(ball.center, dtype=float).copy()
        near[0] += 1e-6 * ball.radius
        val = float(abs(f(near)))
        val = val if math.isfinite(val) and val > 0 else 1.0
        lo_exp, top = math.log10(val) - 12, val * 1e12
        num_levels *= 2
    levels = np.logspace(lo_exp, math.log10(top), num_levels)
    vals = np.array([term(u, f.distribution(ball, u)) for u in levels])
    i = int(np.argmax(vals))
    best = float(vals[i])
    if 0 < i < len(levels) - 1:
        _, v = golden_max_scalar(lambda s: term(math.exp(s), f.distribution(ball, math.exp(s))),
                                 math.log(levels[i - 1]), math.log(levels[i + 1]), rtol=1e-12)
        best = max(best, v)
    return best


def weak_central_norm(f, prm, radius_grid=None, refine=True):
    if f.is_zero():
        return CentralNorm(0.0, math.nan, False)
    grid = default_radius_grid(f) if radius_grid is None else radius_grid
    return _sup_over_radii(lambda r: weak_norm(f, prm, Ball.centered(r, prm.dim)), grid, refine)


def _require_unit_lambda(lam):
    if not 0.0 <= lam <= 1.0:
        raise ConstraintError("0 <= lambda <= 1", f"lambda={lam}")


def chi_norm_closed(prm, t, r):
    """``||chi_{B_t}||_{Phi,lam,B_r} = 1/Phi^{-1}(|B_r|**lam / |B_r ∩ B_t|)``."""
    _require_unit_lambda(prm.lam)
    if not (t > 0 and r > 0):
        raise ValueError("radii must be positive")
    vn = unit_ball_volume(prm.dim)
    overlap = vn * min(r, t) ** prm.dim
    return 1.0 / float(prm.phi.inverse((vn * r ** prm.dim) ** prm.lam / overlap))


def chi_central_norm_closed(prm, t):
    """``||chi_{B_t}||_{M^{Phi,lam}(0)} = 1/Phi^{-1}(|B_t|**(lam-1))``."""
    _require_unit_lambda(prm.lam)
    if not t > 0:
        raise ValueError("radius must be positive")
    return 1.0 / float(prm.phi.inverse(float(ball_volume(t, prm.dim)) ** (prm.lam - 1.0)))


def chi_conjugate_bound(prm, b, r):
    """Closed-form upper bound and measured value of ``||chi_b||_{Phi*,lam,B_r}``.

    The bound is ``|B_r ∩ b| / |B_r|**lam * Phi^{-1}(|B_r|**lam / |B_r ∩ b|)``.
    """
    _require_unit_lambda(prm.lam)
    ball = Ball.centered(r, prm.dim)
    overlap = intersection_volume(ball, b)
    if overlap <= 0:
        raise ValueError("the ball does not meet B_r")
    vol_lam = ball_volume(ball) ** prm.lam
    bound = overlap / vol_lam * float(prm.phi.inverse(vol_lam / overlap))
    f = TestFunction.indicator(b.radius, prm.dim, center=b.center)
    measured = luxemburg_norm(f, prm.conjugate(), ball)
    return {"bound": bound, "measured": measured, "gap": bound - measured}


def product_integral(f, g, ball):
    """``∫_ball |f g|``."""
    if f.is_zero() or g.is_zero():
        return 0.0
    try:
        return f.product(g).ball_integral(ball, "abs")
    except NotImplementedError:
        if ball.dim != 1:
            raise
    bps = f._line_breakpoints() + g._line_breakpoints()
    return _line_integral(lambda y: np.abs(f(y) * g(y)), ball, bps, step=f.is_step and g.is_step)


def holder_gap(f, g, prm, ball):
    """Both sides of ``∫_B |fg| <= 2 |B|**lam ||f||_{Phi} ||g||_{Phi*}``."""
    lhs = product_integral(f, g, ball)
    nf = luxemburg_norm(f, prm, ball)
    ng = luxemburg_norm(g, prm.conjugate(), ball)
    if nf == 0.0 or ng == 0.0:
        rhs = 0.0
    else:
        rhs = 2.0 * ball_volume(ball) ** prm.lam * nf * ng
    return {"lhs": lhs, "rhs": rhs}
