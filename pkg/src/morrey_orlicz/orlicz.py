"""Young and Orlicz functions: evaluation, inversion, conjugation, doubling.

A Young function is represented by one of the :class:`OrliczSpec`
subclasses below.  All specs are immutable; every operation is a pure
function of its inputs.

Functions whose *inverse* has a convenient closed form (the power-log
families) store the inverse as the primitive and obtain the function itself
by monotone bisection.
"""

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ._numerics import LOG_HUGE, LOG_TINY, bisect_log, golden_max_log
from .errors import ConstraintError, ExtrapolationError, UnresolvedSupremumError

__all__ = [
    "OrliczSpec", "Power", "MaxPower", "InversePowerLog", "Tabulated",
    "Conjugate", "ConjugateRep", "evaluate", "inverse", "conjugate",
    "delta2_estimate", "young_product_check", "default_grid",
]

CONJ_GRID_POINTS = 512
CONJ_GRID_LOG10 = (-8.0, 8.0)
CONJ_RTOL = 1e-10


def default_grid(lo=1e-6, hi=1e6, num=64):
    return np.logspace(math.log10(lo), math.log10(hi), num)


def _as_array(x):
    return np.asarray(x, dtype=float)


def _scalar_or_array(x, like):
    if np.ndim(like) == 0:
        return float(np.asarray(x).reshape(()))
    return x


class OrliczSpec:
    """Base class of Young-function specifications.

    Subclasses implement ``_evaluate`` and ``_inverse`` on float arrays.
    ``jump`` is the right end of the effective domain (``None`` when the
    function is finite everywhere) and ``slope_at_infinity`` is
    ``lim Phi(u)/u`` (``None`` when infinite).
    """

    jump = None
    slope_at_infinity = None
    explicit_inverse = False

    def __call__(self, u):
        return self.evaluate(u)

    def evaluate(self, u):
        u = _as_array(u)
        if np.any(u < 0):
            raise ValueError("Young functions are defined for u >= 0")
        out = np.zeros_like(u)
        pos = u > 0
        if np.any(pos):
            out[pos] = self._evaluate(u[pos])
        return _scalar_or_array(out, u)

    def inverse(self, v):
        """Right-continuous inverse ``inf{u >= 0 : Phi(u) > v}``."""
        v = _as_array(v)
        if np.any(v < 0):
            raise ValueError("the inverse is defined for v >= 0")
        return _scalar_or_array(self._inverse(v), v)

    @property
    def allows_infinity(self):
        return self.jump is not None

    @property
    def is_orlicz(self):
        """Finite-valued, continuous and strictly increasing."""
        return self.jump is None

    def inverse_asymptotics(self):
        """Power-log shape of the inverse near 0 and infinity.

        Returns ``{"zero": (e, k, c), "inf": (e, k, c)}`` meaning
        ``Phi^{-1}(v) ~ v**e * (1 + c*|ln v|)**k``, or ``None`` when the
        family has no known closed shape.
        """
        return None

    def _evaluate(self, u):
        raise NotImplementedError

    def _inverse(self, v):
        # generic right-continuous inverse by bisection on the function
        v = v.astype(float)
        return bisect_log(lambda u: self._evaluate_safe(u) > v, shape=v.shape)

    def _evaluate_safe(self, u):
        out = np.zeros_like(u)
        pos = u > 0
        out[pos] = self._evaluate(u[pos])
        return out


@dataclass(frozen=True)
class Power(OrliczSpec):
    """``Phi(u) = u**p`` with ``p >= 1``."""

    p: float
    explicit_inverse = True

    def __post_init__(self):
        if not self.p >= 1:
            raise ValueError(f"power exponent must be >= 1, got {self.p}")

    @property
    def slope_at_infinity(self):
        return 1.0 if self.p == 1 else None

    def _evaluate(self, u):
        return u ** self.p

    def _inverse(self, v):
        return v ** (1.0 / self.p)

    def inverse_asymptotics(self):
        e = (1.0 / self.p, 0.0, 0.0)
        return {"zero": e, "inf": e}


@dataclass(frozen=True)
class MaxPower(OrliczSpec):
    """``Phi(u) = max(u**p1, u**p2)`` with ``1 <= p1 < p2``."""

    p1: float
    p2: float
    explicit_inverse = True

    def __post_init__(self):
        if not (1 <= self.p1 < self.p2):
            raise ValueError(f"need 1 <= p1 < p2, got p1={self.p1}, p2={self.p2}")

    def _evaluate(self, u):
        return np.maximum(u ** self.p1, u ** self.p2)

    def _inverse(self, v):
        return np.minimum(v ** (1.0 / self.p1), v ** (1.0 / self.p2))

    def inverse_asymptotics(self):
        return {"zero": (1.0 / self.p1, 0.0, 0.0), "inf": (1.0 / self.p2, 0.0, 0.0)}


def power_log_inverse(v, p1, a, p2, b, c1=1.0, c2=1.0):
    """The two-branch power-log inverse, unvalidated.

    ``v**(1/p1) * (1 - c1 ln v)**a`` for ``v <= 1`` and
    ``v**(1/p2) * (1 + c2 ln v)**(-b)`` for ``v >= 1``.
    """
    v = _as_array(v)
    out = np.zeros_like(v)
    with np.errstate(divide="ignore"):
        lv = np.log(v)
    low = (v > 0) & (v <= 1)
    high = v > 1
    out[low] = v[low] ** (1.0 / p1) * (1.0 - c1 * lv[low]) ** a
    out[high] = v[high] ** (1.0 / p2) * (1.0 + c2 * lv[high]) ** (-b)
    out[np.isinf(v)] = np.inf
    return _scalar_or_array(out, v)


@dataclass(frozen=True)
class InversePowerLog(OrliczSpec):
    """Young function given through a two-branch power-log inverse.

    The inverse is ``v**(1/p1) * (1 - c1*ln v)**a`` on ``(0, 1]`` and
    ``v**(1/p2) * (1 + c2*ln v)**(-b)`` on ``[1, inf)``.  With
    ``p1 = p2 = p``, ``a = 0`` this is the single-log family; with
    ``b = 0`` the upper branch is a pure power.

    At construction the inverse is checked to be strictly increasing and
    concave on a log grid (equivalently, the function is an Orlicz function).
    Pass ``validate=False`` to skip the check.
    """

    p1: float
    a: float
    p2: float
    b: float
    c1: float = 1.0
    c2: float = 1.0
    validate: bool = field(default=True, compare=False, repr=False)
    explicit_inverse = True

    def __post_init__(self):
        if self.p1 < 1 or self.p2 < 1:
            raise ValueError("exponents p1, p2 must be >= 1")
        if self.a < 0 or self.b < 0 or self.c1 <= 0 or self.c2 <= 0:
            raise ValueError("log powers must be >= 0 and log coefficients > 0")
        if self.validate:
            self.check_shape()

    def check_shape(self, num=4001, lo=-30.0, hi=30.0, rtol=1e-9):
        """Raise :class:`ConstraintError` unless the inverse is increasing and concave."""
        v = np.logspace(lo, hi, num)
        g = self._inverse(v)
        dg = np.diff(g)
        if not np.all(dg > 0):
            raise ConstraintError("inverse strictly increasing",
                                  f"fails near v={v[np.argmin(dg > 0)]:.3g}")
        slopes = dg / np.diff(v)
        # chord slopes of a concave function are nonincreasing
        bad = slopes[1:] > slopes[:-1] * (1 + rtol) + 1e-300
        if np.any(bad):
            i = int(np.argmax(bad))
            raise ConstraintError("inverse concave (Young function convex)",
                                  f"chord slopes increase near v={v[i + 1]:.3g}")

    def _inverse(self, v):
        return power_log_inverse(v, self.p1, self.a, self.p2, self.b, self.c1, self.c2)

    def _evaluate(self, u):
        # Phi(u) = v solving Phi^{-1}(v) = u; bisection in log v
        u = u.astype(float)
        return bisect_log(lambda v: self._inverse(v) >= u, shape=u.shape, atol=1e-14)

    @property
    def slope_at_infinity(self):
        return 1.0 if (self.p2 == 1 and self.b == 0) else None

    def inverse_asymptotics(self):
        return {"zero": (1.0 / self.p1, self.a, self.c1),
                "inf": (1.0 / self.p2, -self.b, self.c2)}


@dataclass(frozen=True)
class Tabulated(OrliczSpec):
    """Piecewise-linear Young function through ``(u, Phi(u))`` samples.

    The origin is prepended when missing.  Queries beyond the last sample
    raise :class:`ExtrapolationError`.
    """

    u: tuple
    phi: tuple

    def __post_init__(self):
        u = np.asarray(self.u, dtype=float)
        ph = np.asarray(self.phi, dtype=float)
        if u.shape != ph.shape or u.ndim != 1 or u.size < 2:
            raise ValueError("need matching 1-D sample arrays with >= 2 points")
        if u[0] != 0.0:
            u = np.concatenate([[0.0], u])
            ph = np.concatenate([[0.0], ph])
        if ph[0] != 0.0:
            raise ValueError("a Young function vanishes at 0")
        if np.any(np.diff(u) <= 0) or np.any(np.diff(ph) <= 0):
            raise ValueError("samples must be strictly increasing")
        slopes = np.diff(ph) / np.diff(u)
        if np.any(np.diff(slopes) < -1e-12 * np.abs(slopes[1:])):
            raise ValueError("tabulated function is not convex")
        object.__setattr__(self, "u", tuple(u))
        object.__setattr__(self, "phi", tuple(ph))

    def _evaluate(self, u):
        if np.any(u > self.u[-1]):
            raise ExtrapolationError(f"u beyond table end {self.u[-1]}")
        return np.interp(u, self.u, self.phi)

    def _inverse(self, v):
        if np.any(v > self.phi[-1]):
            raise ExtrapolationError(f"v beyond table end {self.phi[-1]}")
        return np.interp(v, self.phi, self.u)


@dataclass(frozen=True)
class ConjugateRep:
    """Numerical representation of a complementary function.

    ``breakpoint`` is where the conjugate jumps to infinity (``None`` if it
    is finite everywhere); ``closed_form`` is set for power bases.
    """

    breakpoint: float = None
    closed_form: str = None


@dataclass(frozen=True)
class Conjugate(OrliczSpec):
    """Complementary function ``Phi*(v) = sup_{u>0} [u v - Phi(u)]``."""

    of: OrliczSpec

    @cached_property
    def rep(self):
        base = self.of
        closed = None
        if isinstance(base, Power):
            closed = "indicator" if base.p == 1 else "power"
        return ConjugateRep(breakpoint=base.slope_at_infinity, closed_form=closed)

    @property
    def jump(self):
        return self.of.slope_at_infinity

    @property
    def slope_at_infinity(self):
        return self.of.jump

    def inverse_asymptotics(self):
        if isinstance(self.of, Power) and self.of.p > 1:
            e = (1.0 - 1.0 / self.of.p, 0.0, 0.0)
            return {"zero": e, "inf": e}
        return None

    def _power_coef(self):
        p = self.of.p
        return (1.0 - 1.0 / p) * p ** (-1.0 / (p - 1.0)), p / (p - 1.0)

    def _evaluate(self, v):
        rep = self.rep
        if rep.closed_form == "indicator":
            return np.where(v <= 1.0, 0.0, np.inf)
        if rep.closed_form == "power":
            c, q = self._power_coef()
            return c * v ** q
        return legendre_sup(self.of, v)

    def _inverse(self, w):
        rep = self.rep
        if rep.closed_form == "indicator":
            return np.ones_like(w)
        if rep.closed_form == "power":
            c, q = self._power_coef()
            return (w / c) ** (1.0 / q)
        w = w.astype(float)
        return bisect_log(lambda v: self._evaluate_safe(v) > w, shape=w.shape, atol=1e-12)

    @cached_property
    def table(self):
        """Grid of ``(v, Phi*(v))`` values, for inspection and export."""
        v = np.logspace(-4, 4, 129)
        return v, self.evaluate(v)


def legendre_sup(base, w):
    """``sup_{x>0} [x w - base(x)]`` for an array ``w`` of slopes.

    Log-spaced grid search followed by golden-section refinement around the
    grid argmax.  For bases with an explicit inverse the search runs over
    ``v = base(x)`` instead, where the objective ``w base^{-1}(v) - v`` is
    concave and needs no function inversion.
    """
    w = _as_array(w)
    out = np.zeros_like(w)
    slope = base.slope_at_infinity
    todo = w > 0
    if slope is not None:
        inf_mask = todo & (w > slope)
        out[inf_mask] = np.inf
        todo &= ~inf_mask
    if not np.any(todo):
        return out
    if isinstance(base, Tabulated):
        out[todo] = _tabulated_sup(base, w[todo])
        return out
    if base.explicit_inverse:
        def objective(x, ww):
            with np.errstate(over="ignore", invalid="ignore"):
                val = ww * base._inverse(x) - x
            return np.where(np.isnan(val), -np.inf, val)
    else:
        def objective(x, ww):
            with np.errstate(invalid="ignore"):
                val = ww * x - base._evaluate_safe(x)
            return np.where(np.isnan(val), -np.inf, val)
    upper = base.jump if (base.jump is not None and not base.explicit_inverse) else None
    out[todo] = _grid_golden_sup(objective, w[todo], upper)
    return out


def _grid_golden_sup(objective, w, upper):
    lo10, hi10 = CONJ_GRID_LOG10
    if upper is not None:
        hi10 = math.log10(upper)
        lo10 = hi10 - (CONJ_GRID_LOG10[1] - CONJ_GRID_LOG10[0])
    res = np.empty_like(w)
    pending = np.arange(w.size)
    span = hi10 - lo10
    lo = np.full(w.size, lo10)
    hi = np.full(w.size, hi10)
    for _ in range(80):
        if pending.size == 0:
            break
        ww = w[pending]
        t = np.linspace(0.0, 1.0, CONJ_GRID_POINTS)
        grid = 10.0 ** (lo[pending][:, None] + (hi[pending] - lo[pending])[:, None] * t)
        vals = objective(grid, ww[:, None])
        idx = np.argmax(vals, axis=1)
        at_low = idx == 0
        at_high = (idx == CONJ_GRID_POINTS - 1)
        if upper is not None:
            at_high &= False  # the domain ends at the jump
        interior = ~(at_low | at_high)
        rows = np.nonzero(interior)[0]
        if rows.size:
            i = idx[rows]
            a = grid[rows, np.maximum(i - 1, 0)]
            b = grid[rows, np.minimum(i + 1, CONJ_GRID_POINTS - 1)]
            wr = ww[rows][:]
            x, fx = golden_max_log(lambda x: objective(x, wr), a, b, rtol=CONJ_RTOL)
            res[pending[rows]] = np.maximum(np.maximum(fx, vals[rows, i]), 0.0)
        # the supremum lies below the grid: it is squeezed between 0 and the
        # objective there, extend downward until it becomes interior
        low_rows = np.nonzero(at_low)[0]
        for r in low_rows:
            j = pending[r]
            if lo[j] <= LOG_TINY / math.log(10) + span:
                res[j] = max(float(vals[r, 0]), 0.0)
                interior[r] = True
            else:
                hi[j] = lo[j] + 1.0
                lo[j] = lo[j] - span + 1.0
        high_rows = np.nonzero(at_high)[0]
        for r in high_rows:
            j = pending[r]
            if hi[j] >= LOG_HUGE / math.log(10) - span:
                res[j] = np.inf
                interior[r] = True
            else:
                lo[j] = hi[j] - 1.0
                hi[j] = hi[j] + span - 1.0
        pending = pending[~interior]
    if pending.size:
        raise UnresolvedSupremumError("conjugate supremum not bracketed")
    return res


def _tabulated_sup(base, w):
    u = np.asarray(base.u)
    ph = np.asarray(base.phi)
    vals = w[:, None] * u[None, :] - ph[None, :]
    idx = np.argmax(vals, axis=1)
    last_slope = (ph[-1] - ph[-2]) / (u[-1] - u[-2])
    if np.any((idx == u.size - 1) & (w > last_slope)):
        raise UnresolvedSupremumError("table does not bracket the supremum")
    return np.maximum(vals[np.arange(w.size), idx], 0.0)


def evaluate(spec, u):
    """``Phi(u)``; ``inf`` is returned past a jump."""
    return spec.evaluate(u)


def inverse(spec, v):
    """Right-continuous inverse ``inf{u >= 0 : Phi(u) > v}``."""
    return spec.inverse(v)


def conjugate(spec):
    """Complementary function of ``spec`` as a :class:`Conjugate` spec."""
    return Conjugate(spec)


def delta2_estimate(spec, u_grid=None):
    """Doubling constant ``sup Phi(2u)/Phi(u)`` over a grid.

    Returns ``(satisfied, D2)``.  Powers get the exact value ``2**p``.
    """
    if isinstance(spec, Power):
        return True, 2.0 ** spec.p
    u = default_grid() if u_grid is None else _as_array(u_grid)
    if u.size == 0 or np.any(u <= 0):
        raise ValueError("need a nonempty grid of positive u")
    f1 = _as_array(spec.evaluate(u))
    f2 = _as_array(spec.evaluate(2 * u))
    if np.any(~np.isfinite(f2)) or np.any(f1 <= 0):
        return False, math.inf
    d2 = float(np.max(f2 / f1))
    return math.isfinite(d2), d2


def young_product_check(spec, u_grid=None):
    """Extremes of ``Phi^{-1}(u) Phi*^{-1}(u) / u`` over a grid.

    Both extremes lie in ``[1, 2]`` for every Young function.
    """
    u = default_grid() if u_grid is None else _as_array(u_grid)
    conj = conjugate(spec)
    ratio = _as_array(spec.inverse(u)) * _as_array(conj.inverse(u)) / u
    return {"min_ratio": float(np.min(ratio)), "max_ratio": float(np.max(ratio)),
            "ratios": ratio}
