"""Piecewise-radial test functions and exact integrals over balls.

A :class:`TestFunction` is a finite sum of *atoms*: ``coef * |x - c|**beta``
restricted to an annulus ``inner <= |x - c| < outer``.  Indicators of balls
(centred or translated) are atoms with ``beta = 0`` and ``inner = 0``.

Atoms sharing a center form a radial profile about that center.  Integrals
of a profile over an arbitrary ball reduce to one dimension through the
fraction of each sphere ``|y - c| = s`` lying inside the ball; constant
pieces are handled exactly by ball-intersection volumes.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .geometry import (Ball, lens_volume, radial_integral, sphere_fraction, sphere_fraction_scalar,
                       unit_ball_volume)

__all__ = ["Atom", "TestFunction", "RadialProfile"]

QUAD_RTOL = 1e-11


@dataclass(frozen=True)
class Atom:
    """``coef * |x - center|**beta`` on ``inner <= |x - center| < outer``."""

    center: tuple
    inner: float
    outer: float
    coef: float
    beta: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.inner < self.outer):
            raise ValueError(f"need 0 <= inner < outer, got [{self.inner}, {self.outer})")
        if not math.isfinite(self.coef):
            raise ValueError("coefficients must be finite")


class RadialProfile:
    """Piecewise power-sum profile ``q(s)`` on consecutive intervals of ``s``.

    ``edges`` is increasing, starting at 0 and possibly ending at ``inf``;
    ``terms[i]`` is a tuple of ``(coef, beta)`` pairs active on
    ``[edges[i], edges[i+1])``.
    """

    def __init__(self, atoms):
        edges = sorted({0.0} | {a.inner for a in atoms} | {a.outer for a in atoms})
        terms = []
        for lo, hi in zip(edges[:-1], edges[1:]):
            acc = {}
            for a in atoms:
                if a.inner <= lo and hi <= a.outer:
                    acc[a.beta] = acc.get(a.beta, 0.0) + a.coef
            terms.append(tuple((c, b) for b, c in sorted(acc.items()) if c != 0.0))
        # merge neighbouring intervals with identical terms
        e_out, t_out = [edges[0]], []
        for hi, t in zip(edges[1:], terms):
            if t_out and t_out[-1] == t:
                e_out[-1] = hi
            else:
                t_out.append(t)
                e_out.append(hi)
        self.edges = tuple(e_out)
        self.terms = tuple(t_out)

    def intervals(self):
        return zip(self.edges[:-1], self.edges[1:], self.terms)

    @property
    def is_step(self):
        return all(b == 0.0 for t in self.terms for _, b in t)

    @property
    def support(self):
        """Outer radius of the support (0 for the zero profile)."""
        out = 0.0
        for lo, hi, t in self.intervals():
            if t:
                out = hi
        return out

    def value(self, s):
        s = np.asarray(s, dtype=float)
        out = np.zeros_like(s)
        for lo, hi, t in self.intervals():
            m = (s >= lo) & (s < hi)
            if not np.any(m) or not t:
                continue
            out[m] = sum(_power(c, b, s[m]) for c, b in t)
        return out


def _power(c, b, s):
    if b == 0.0:
        return np.full_like(s, c)
    with np.errstate(divide="ignore"):
        return c * s ** b


def _term_value(t, s):
    if not t:
        return np.zeros_like(s)
    return sum(_power(c, b, s) for c, b in t)


class TestFunction:
    """Finite sum of radial atoms in ``R^dim``.

    Parameters mirror the usual description: ``pieces`` are annuli about
    ``center`` (each ``(inner, outer, coef)`` or ``(inner, outer, coef,
    beta)``), and ``translated_indicators`` is a list of ``(Ball, coef)``.
    """

    __test__ = False  # not a pytest class

    def __init__(self, dim, pieces=(), center=None, translated_indicators=(), atoms=()):
        self.dim = int(dim)
        c0 = tuple(float(x) for x in (center if center is not None else (0.0,) * self.dim))
        if len(c0) != self.dim:
            raise ValueError("center dimension mismatch")
        out = list(atoms)
        for p in pieces:
            inner, outer, coef = p[:3]
            beta = p[3] if len(p) > 3 else 0.0
            out.append(Atom(c0, float(inner), float(outer), float(coef), float(beta)))
        for ball, coef in translated_indicators:
            if ball.dim != self.dim:
                raise ValueError("indicator ball dimension mismatch")
            out.append(Atom(ball.center, 0.0, ball.radius, float(coef)))
        self.atoms = tuple(a for a in out if a.coef != 0.0)
        for a in self.atoms:
            if len(a.center) != self.dim:
                raise ValueError("atom center dimension mismatch")
        self._groups = None

    # construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, dim):
        return cls(dim)

    @classmethod
    def indicator(cls, radius, dim, center=None, coef=1.0):
        c = tuple(center) if center is not None else (0.0,) * dim
        return cls(dim, atoms=[Atom(tuple(float(x) for x in c), 0.0, float(radius), float(coef))])

    @classmethod
    def radial_power(cls, beta, radius, dim, coef=1.0, center=None):
        c = tuple(center) if center is not None else (0.0,) * dim
        return cls(dim, atoms=[Atom(tuple(float(x) for x in c), 0.0, float(radius), float(coef), float(beta))])

    @classmethod
    def constant(cls, value, dim):
        return cls(dim, atoms=[Atom((0.0,) * dim, 0.0, math.inf, float(value))])

    @classmethod
    def witness(cls, R, dim):
        """Indicator of the unit ball about ``(R, 0, ..., 0)``."""
        c = (float(R),) + (0.0,) * (dim - 1)
        return cls.indicator(1.0, dim, center=c)

    def __add__(self, other):
        if not isinstance(other, TestFunction):
            return NotImplemented
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        return TestFunction(self.dim, atoms=self.atoms + other.atoms)

    def __mul__(self, scalar):
        scalar = float(scalar)
        return TestFunction(self.dim, atoms=[Atom(a.center, a.inner, a.outer, a.coef * scalar, a.beta)
                                             for a in self.atoms])

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def __sub__(self, other):
        if not isinstance(other, TestFunction):
            return NotImplemented
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, TestFunction) and self.dim == other.dim and self.atoms == other.atoms

    def __hash__(self):
        return hash((self.dim, self.atoms))

    def __repr__(self):
        return f"TestFunction(dim={self.dim}, atoms={list(self.atoms)!r})"

    # structure ------------------------------------------------------------

    def groups(self):
        """List of ``(center, RadialProfile)`` pairs, one per distinct center."""
        if self._groups is None:
            by_center = {}
            for a in self.atoms:
                by_center.setdefault(a.center, []).append(a)
            self._groups = [(np.asarray(c), RadialProfile(at)) for c, at in sorted(by_center.items())]
        return self._groups

    def is_zero(self):
        return all(not any(t for t in prof.terms) for _, prof in self.groups())

    @property
    def is_step(self):
        return all(a.beta == 0.0 for a in self.atoms)

    @property
    def is_nonnegative(self):
        """Sufficient check: every atom has a nonnegative coefficient."""
        return all(a.coef >= 0 for a in self.atoms)

    @property
    def singular_at_center(self):
        return any(a.beta < 0 and a.inner == 0.0 for a in self.atoms)

    def support_radius(self, about=None):
        """Radius of the smallest ball about ``about`` containing the support."""
        p = np.zeros(self.dim) if about is None else np.asarray(about, dtype=float)
        out = 0.0
        for c, prof in self.groups():
            s = prof.support
            if s > 0:
                out = max(out, float(np.linalg.norm(c - p)) + s)
        return out

    def radial_breakpoints(self, about=None):
        """Distances from ``about`` at which some atom boundary can be crossed."""
        p = np.zeros(self.dim) if about is None else np.asarray(about, dtype=float)
        out = set()
        for c, prof in self.groups():
            d = float(np.linalg.norm(c - p))
            for e in prof.edges:
                if math.isfinite(e):
                    out.add(abs(d - e))
                    out.add(d + e)
        return sorted(x for x in out if x > 0)

    def is_radial_about_origin(self):
        return all(not np.any(c) for c, _ in self.groups())

    def radial_profile(self):
        """The profile about the origin of a radial function."""
        if not self.is_radial_about_origin():
            raise ValueError("function is not radial about the origin")
        g = self.groups()
        return g[0][1] if g else RadialProfile([])

    # pointwise ------------------------------------------------------------

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.dim == 1 and (x.ndim == 0 or x.shape[-1] != 1):
            x = x[..., None]
        out = np.zeros(x.shape[:-1])
        for c, prof in self.groups():
            out = out + prof.value(np.linalg.norm(x - c, axis=-1))
        return out

    # integrals over balls -------------------------------------------------

    def _groups_disjoint(self):
        g = self.groups()
        for i in range(len(g)):
            for j in range(i + 1, len(g)):
                if np.linalg.norm(g[i][0] - g[j][0]) < g[i][1].support + g[j][1].support:
                    return False
        return True

    def ball_integral(self, ball, fn=None):
        """``∫_ball fn(f(y)) dy``.

        ``fn=None`` integrates ``f`` itself (linear, always exact up to
        quadrature); ``fn="abs"`` integrates ``|f|``; any other callable
        must satisfy ``fn(0) = 0`` and act elementwise on arrays.
        """
        if ball.dim != self.dim:
            raise ValueError("ball dimension mismatch")
        if fn is None:
            return sum(_profile_ball_integral(prof, c, ball, None) for c, prof in self.groups())
        if fn == "abs":
            if self.is_nonnegative:
                return self.ball_integral(ball)
            fn = np.abs
        if len(self.groups()) <= 1 or self._groups_disjoint():
            return sum(_profile_ball_integral(prof, c, ball, fn) for c, prof in self.groups())
        if self.dim == 1:
            if fn is np.abs and not self.is_step:
                # scalar path: quad calls the integrand thousands of times
                atoms = [(a.center[0], a.inner, a.outer, a.coef, a.beta) for a in self.atoms]

                def absval(y):
                    v = 0.0
                    for c, lo, hi, k, b in atoms:
                        r = abs(y - c)
                        if lo <= r < hi:
                            v += k if b == 0.0 else (k * r ** b if r > 0 else math.copysign(math.inf, k))
                    return abs(v)

                return _line_integral(absval, ball, self._line_breakpoints(), scalar=True)
            return _line_integral(lambda y: fn(self(y)), ball, self._line_breakpoints(), step=self.is_step)
        if self.dim == 2:
            return self._plane_integral(ball, fn)
        raise NotImplementedError("nonlinear integrals of overlapping off-center atoms need dim <= 2")

    def _ring_masses(self, z, s, fn):
        """``s * ∫_0^{2 pi} fn(f(z + s e(t))) dt`` for an array of radii ``s``.

        The circle is cut where it crosses atom boundaries; on each arc a
        step function is constant, so the midpoint value is exact.  Other
        functions fall back to adaptive quadrature along each arc.
        """
        s = np.asarray(s, dtype=float)
        two_pi = 2 * math.pi
        cols = [np.zeros_like(s), np.full_like(s, two_pi)]
        for a in self.atoms:
            dx, dy = a.center[0] - z[0], a.center[1] - z[1]
            d = math.hypot(dx, dy)
            if d == 0.0:
                continue
            phi = math.atan2(dy, dx)
            for e in (a.inner, a.outer):
                if not (math.isfinite(e) and e > 0):
                    continue
                with np.errstate(divide="ignore", invalid="ignore"):
                    cos = (s * s + d * d - e * e) / (2 * s * d)
                ok = (cos > -1) & (cos < 1)
                th = np.arccos(np.where(ok, cos, 1.0))
                # absent crossings become zero-length arcs at 2 pi
                cols.append(np.where(ok, np.mod(phi + th, two_pi), two_pi))
                cols.append(np.where(ok, np.mod(phi - th, two_pi), two_pi))
        cuts = np.sort(np.stack(cols, axis=-1), axis=-1)
        lo, hi = cuts[:, :-1], cuts[:, 1:]
        width = hi - lo
        if self.is_step:
            mid = 0.5 * (lo + hi)
            pts = np.stack([z[0] + s[:, None] * np.cos(mid), z[1] + s[:, None] * np.sin(mid)], axis=-1)
            vals = np.asarray(fn(self(pts.reshape(-1, 2))), dtype=float).reshape(mid.shape)
            return s * np.sum(np.where(width > 0, vals * width, 0.0), axis=-1)
        out = np.zeros_like(s)
        for i, si in enumerate(s):
            for a0, b0 in zip(lo[i], hi[i]):
                if b0 - a0 <= 0:
                    continue
                v, _ = integrate.quad(
                    lambda t: float(fn(self(np.array([[z[0] + si * math.cos(t), z[1] + si * math.sin(t)]])))[0]),
                    a0, b0, epsabs=0.0, epsrel=QUAD_RTOL, limit=200)
                out[i] += v * si
        return out

    def _plane_integral(self, ball, fn):
        # polar coordinates about the ball center.  Between consecutive
        # breakpoint radii the ring mass is smooth apart from square-root
        # behaviour at the ends, which s = lo + (hi - lo) sin^2(pi u / 2)
        # removes, so a fixed Gauss-Legendre rule per panel suffices
        z = tuple(float(v) for v in ball.center)
        R = ball.radius
        brk = sorted({b for b in self.radial_breakpoints(about=z) if 0 < b < R} | {0.0, R})
        lo = np.array(brk[:-1])[:, None]
        hi = np.array(brk[1:])[:, None]
        u = 0.5 * (_PLANE_NODES + 1.0)
        s = lo + (hi - lo) * np.sin(0.5 * math.pi * u) ** 2
        jac = (hi - lo) * 0.5 * math.pi * np.sin(math.pi * u) * 0.5 * _PLANE_WEIGHTS
        vals = self._ring_masses(z, s.ravel(), fn).reshape(s.shape)
        return float(np.sum(vals * jac))

    def _line_breakpoints(self):
        pts = set()
        for a in self.atoms:
            c = a.center[0]
            for e in (a.inner, a.outer):
                if math.isfinite(e):
                    pts.update((c - e, c + e))
        return sorted(pts)

    def distribution(self, ball, level):
        """``|{y in ball : |f(y)| > level}|``; exact for single-term pieces."""
        if level < 0:
            raise ValueError("level must be >= 0")
        if len(self.groups()) <= 1 or self._groups_disjoint():
            return sum(_profile_distribution(prof, c, ball, level) for c, prof in self.groups())
        if self.dim == 1 and self.is_step:
            pts = self._line_breakpoints()
            z, R = ball.center[0], ball.radius
            cuts = sorted({z - R, z + R} | {p for p in pts if z - R < p < z + R})
            total = 0.0
            for lo, hi in zip(cuts[:-1], cuts[1:]):
                if abs(float(self(0.5 * (lo + hi)))) > level:
                    total += hi - lo
            return total
        raise NotImplementedError("distribution of overlapping off-center atoms needs dim=1 step functions")

    def level_values(self, ball):
        """Distinct positive values of ``|f|`` on ``ball`` (step functions only)."""
        if not self.is_step:
            raise ValueError("level values are defined for step functions")
        vals = set()
        if len(self.groups()) <= 1 or self._groups_disjoint():
            for c, prof in self.groups():
                d = float(np.linalg.norm(c - np.asarray(ball.center)))
                for lo, hi, t in prof.intervals():
                    if t and lo < d + ball.radius and hi > max(d - ball.radius, 0.0):
                        # annulus meets the ball
                        if lens_volume(hi if math.isfinite(hi) else 2 * (d + ball.radius), ball.radius, d,
                                       self.dim) - lens_volume(lo, ball.radius, d, self.dim) > 0:
                            vals.add(abs(sum(cc for cc, _ in t)))
        elif self.dim == 1:
            pts = self._line_breakpoints()
            z, R = ball.center[0], ball.radius
            cuts = sorted({z - R, z + R} | {p for p in pts if z - R < p < z + R})
            for lo, hi in zip(cuts[:-1], cuts[1:]):
                vals.add(abs(float(self(0.5 * (lo + hi)))))
        else:
            raise NotImplementedError("level sets of overlapping off-center atoms need dim=1")
        return sorted(v for v in vals if v > 0)

    def sup_abs(self, ball):
        """Supremum of ``|f|`` over ``ball`` (``inf`` at a singular center inside)."""
        if self.is_step:
            lv = self.level_values(ball)
            return lv[-1] if lv else 0.0
        best = 0.0
        z = np.asarray(ball.center)
        for c, prof in self.groups():
            d = float(np.linalg.norm(c - z))
            lo_s, hi_s = max(d - ball.radius, 0.0), d + ball.radius
            for lo, hi, t in prof.intervals():
                a, b = max(lo, lo_s), min(hi, hi_s)
                if not t or a >= b:
                    continue
                if a == 0.0 and any(bb < 0 for _, bb in t):
                    return math.inf
                s = np.linspace(a, b if math.isfinite(b) else a + 1.0, 257)
                best = max(best, float(np.max(np.abs(_term_value(t, s)))))
        if len(self.groups()) > 1 and not self._groups_disjoint():
            best = sum(self.__class__(self.dim, atoms=[a]).sup_abs(ball) for a in self.atoms)
        return best

    def product(self, other):
        """Pointwise product, available when both share a single common center."""
        g1, g2 = self.groups(), other.groups()
        if not g1 or not g2:
            return TestFunction(self.dim)
        if len(g1) == 1 and len(g2) == 1 and np.array_equal(g1[0][0], g2[0][0]):
            c = tuple(float(x) for x in g1[0][0])
            edges = sorted(set(g1[0][1].edges) | set(g2[0][1].edges))
            atoms = []
            for lo, hi in zip(edges[:-1], edges[1:]):
                mid = 0.5 * (lo + hi) if math.isfinite(hi) else lo + 1.0
                t1 = _terms_at(g1[0][1], mid)
                t2 = _terms_at(g2[0][1], mid)
                for c1, b1 in t1:
                    for c2, b2 in t2:
                        atoms.append(Atom(c, lo, hi, c1 * c2, b1 + b2))
            return TestFunction(self.dim, atoms=atoms)
        raise NotImplementedError("products need a common single center")


_PLANE_NODES, _PLANE_WEIGHTS = np.polynomial.legendre.leggauss(48)


def _terms_at(prof, s):
    for lo, hi, t in prof.intervals():
        if lo <= s < hi:
            return t
    return ()


def _line_integral(func, ball, breakpoints, step=False, scalar=False):
    z, R = ball.center[0], ball.radius
    cuts = sorted({z - R, z + R} | {p for p in breakpoints if z - R < p < z + R})
    total = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        for lo, hi in zip(cuts[:-1], cuts[1:]):
            if step:
                total += float(func(np.array([[0.5 * (lo + hi)]]))[0]) * (hi - lo)
                continue
            g = func if scalar else (lambda y: float(func(np.array([[y]]))[0]))
            val, _ = integrate.quad(g, lo, hi, epsabs=0.0, epsrel=QUAD_RTOL, limit=400)
            total += val
    return total


def _power_antiderivative(beta, a, b):
    """``∫_a^b r^beta dr`` for ``0 <= a < b``."""
    if beta == 0.0:
        return b - a
    if beta == -1.0:
        return math.log(b / a) if a > 0 else math.inf
    if a == 0.0 and beta < -1.0:
        return math.inf
    return (b ** (beta + 1) - a ** (beta + 1)) / (beta + 1)


def _apply(fn, values):
    return values if fn is None else fn(values)


def _profile_ball_integral(prof, center, ball, fn):
    """``∫_{ball} fn(q(|y - center|)) dy`` for one radial profile."""
    n = ball.dim
    d = float(np.linalg.norm(np.asarray(ball.center) - center))
    R = ball.radius
    area = n * unit_ball_volume(n)
    s_max = d + R
    s_min = max(d - R, 0.0)
    total = 0.0
    for lo, hi, t in prof.intervals():
        if not t or lo >= s_max or hi <= s_min:
            continue
        if all(b == 0.0 for _, b in t):
            val = float(_apply(fn, np.array(sum(c for c, _ in t))))
            v_hi = lens_volume(min(hi, 2 * s_max + 1.0), R, d, n)
            v_lo = lens_volume(lo, R, d, n) if lo > 0 else 0.0
            total += val * (v_hi - v_lo)
            continue
        if n == 1 and (fn is None or (fn is np.abs and len({c > 0 for c, _ in t}) == 1)):
            # on the line the ball meets each annulus in at most two
            # intervals of r = |y - center|, so the integral is closed form
            e = float(ball.center[0]) - float(np.asarray(center).ravel()[0])
            for p0, q0 in ((e - R, e + R), (-e - R, -e + R)):
                a1, b1 = max(lo, p0, 0.0), min(hi, q0)
                if b1 > a1:
                    total += sum((abs(c) if fn is not None else c) * _power_antiderivative(bb, a1, b1)
                                 for c, bb in t)
            continue
        a, b = max(lo, s_min), min(hi, s_max)

        if fn is None:
            def g(s, t=t):
                return sum(c * s ** b for c, b in t) * sphere_fraction_scalar(s, d, R, n)
        else:
            def g(s, t=t):
                s = np.asarray(s, dtype=float)
                return np.asarray(_apply(fn, _term_value(t, s)), dtype=float) * sphere_fraction(s, d, R, n)

        pts = [p for p in (abs(d - R), d + R) if a < p < b]
        if a == 0.0:
            # radial_integral handles the possible singularity at the origin
            total += radial_integral(lambda s: float(g(s)), b, n, breakpoints=pts, rtol=QUAD_RTOL)
        else:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", integrate.IntegrationWarning)
                val, _ = integrate.quad(lambda s: float(g(s)) * s ** (n - 1), a, b, points=pts or None,
                                        epsabs=0.0, epsrel=QUAD_RTOL, limit=400)
            total += area * val
    return total


def _profile_distribution(prof, center, ball, level):
    n = ball.dim
    d = float(np.linalg.norm(np.asarray(ball.center) - center))
    R = ball.radius
    s_max = d + R

    def vol(s):
        if s <= 0:
            return 0.0
        return lens_volume(min(s, 2 * s_max + 1.0), R, d, n)

    total = 0.0
    for lo, hi, t in prof.intervals():
        if not t or lo >= s_max:
            continue
        if len(t) > 1:
            raise NotImplementedError("distribution of multi-term pieces")
        c, beta = t[0]
        c = abs(c)
        if beta == 0.0:
            if c > level:
                total += vol(hi) - vol(lo)
            continue
        if level == 0.0:
            total += vol(hi) - vol(lo)
            continue
        # log form: tiny |beta| would overflow the direct power
        e = math.log(level / c) / beta
        s_star = math.exp(e) if e < 700 else math.inf
        if beta > 0:
            a = max(lo, s_star)
            if a < hi:
                total += vol(hi) - vol(a)
        else:
            b = min(hi, s_star)
            if b > lo:
                total += vol(b) - vol(lo)
    return total
