"""Grid checks of the three integral conditions on a pair ``(Phi, Psi)``.

With ``a = alpha/n`` the conditions compare, for all admissible ``u, r``,

    (1)  ∫_u^inf t^a Phi^{-1}(t^(lam-1)) dt/t             vs  Psi^{-1}(u^(mu-1))
    (2)  u^a Phi^{-1}(r^lam/u) + ∫_u^r t^a Phi^{-1}(r^lam/t) dt/t   vs  Psi^{-1}(r^mu/u),  r > u
    (3)  ∫_u^inf t^a Phi^{-1}(r^lam/t) dt/t               vs  Psi^{-1}(r^mu/u)

Integrals are taken in ``s = ln t`` with Gauss-Legendre panels split at the
kink ``Phi^{-1}`` has at argument 1.  Infinite integrals are truncated once
a power-log tail bound drops below ``TAIL_RTOL`` of the accumulated value.

A condition is flagged divergent when the best ratio grows towards an edge
of the scan: the log-log slope of the edge profile over the outermost
decade exceeds ``DIVERGENCE_SLOPE`` in the outward direction.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .._numerics import end_slopes, segment_integrals
from ..errors import ConstraintError

__all__ = [
    "ConditionReport", "check_condition_1", "check_condition_2", "check_condition_3",
    "power_case_relations", "default_scan_grid", "DIVERGENCE_SLOPE",
]

DIVERGENCE_SLOPE = 0.02
TAIL_RTOL = 1e-10
PANELS_PER_SEGMENT = 8
GL_NODES = 24
TAIL_S_MAX = 690.0
SCAN_POINTS = 64
SCAN_LOG10 = (-6.0, 6.0)


def default_scan_grid(num=SCAN_POINTS, lo=SCAN_LOG10[0], hi=SCAN_LOG10[1]):
    return np.logspace(lo, hi, num)


@dataclass
class ConditionReport:
    """Outcome of a grid check of one condition.

    ``best_constant`` is the largest ratio seen on the grid; it is a lower
    bound for the true best constant (and is only meaningful as such when
    ``divergence_flag`` is set).
    """

    condition_id: int
    params: dict
    best_constant: float
    argmax: tuple
    divergence_flag: bool
    integral_divergent: bool
    end_slopes: dict
    boundary_margins: dict
    grid_spec: dict
    u: np.ndarray = field(repr=False)
    r: np.ndarray = field(repr=False)
    lhs: np.ndarray = field(repr=False)
    rhs: np.ndarray = field(repr=False)
    notes: list = field(default_factory=list)
    threshold: float = DIVERGENCE_SLOPE
    lower_bound_only: bool = True

    @property
    def passed(self):
        return (not self.divergence_flag) and math.isfinite(self.best_constant)

    @property
    def ratio(self):
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.lhs / self.rhs

    @property
    def margin_curve(self):
        """Rows ``(u, r, lhs, rhs, ratio)``; ``r`` is ``nan`` for condition 1."""
        uu, rr = np.broadcast_arrays(self.u, self.r)
        keep = np.isfinite(self.lhs) | np.isinf(self.lhs)
        keep &= ~np.isnan(self.lhs)
        return np.column_stack([uu[keep], rr[keep], self.lhs[keep], self.rhs[keep], self.ratio[keep]])


# integration kernels --------------------------------------------------------

def _panels(nodes, kinks):
    """Split each ``[nodes[i], nodes[i+1]]`` at kinks and into equal panels."""
    a_list, b_list, idx = [], [], []
    kinks = sorted(k for k in kinks if np.isfinite(k))
    for i in range(len(nodes) - 1):
        lo, hi = nodes[i], nodes[i + 1]
        cuts = [lo] + [k for k in kinks if lo < k < hi] + [hi]
        for c0, c1 in zip(cuts[:-1], cuts[1:]):
            edges = np.linspace(c0, c1, PANELS_PER_SEGMENT + 1)
            a_list.append(edges[:-1])
            b_list.append(edges[1:])
            idx.append(np.full(PANELS_PER_SEGMENT, i))
    if not a_list:
        return np.empty(0), np.empty(0), np.empty(0, dtype=int)
    return np.concatenate(a_list), np.concatenate(b_list), np.concatenate(idx)


def _segment_integrals(g, nodes, kinks):
    a, b, idx = _panels(nodes, kinks)
    out = np.zeros(max(len(nodes) - 1, 0))
    if a.size:
        vals = segment_integrals(g, a, b, nodes=GL_NODES)
        np.add.at(out, idx, vals)
    return out


def _tail_exponent(phi, a, lam_rate):
    """Asymptotic ``(beta, k*c*rate)`` of ``ln g(s)`` slope for ``s -> inf``.

    The integrand is ``e^(a s) Phi^{-1}(C e^(-rate s))``; as ``s -> inf`` the
    argument tends to 0 and the inverse behaves like ``v^e (1+c|ln v|)^k``.
    """
    asy = phi.inverse_asymptotics()
    if asy is None:
        return None
    e, k, c = asy["zero"]
    return a - lam_rate * e, k, c * lam_rate


def _tail(g, s0, ref, asym):
    """``∫_{s0}^inf g`` by panels until a tail bound is negligible.

    Returns ``(value, truncation_s, divergent)``.
    """
    if asym is not None:
        beta, k, ck = asym
        if beta > 1e-12 or (abs(beta) <= 1e-12 and k >= -1.0):
            return math.inf, s0, True
    total = 0.0
    s = s0
    width = 2.0
    h = 1e-3
    while s < TAIL_S_MAX:
        s1 = min(s + width, TAIL_S_MAX)
        total += float(np.sum(segment_integrals(
            g, np.linspace(s, s1, PANELS_PER_SEGMENT + 1)[:-1],
            np.linspace(s, s1, PANELS_PER_SEGMENT + 1)[1:], nodes=GL_NODES)))
        s = s1
        gs = float(g(np.array([s]))[0])
        if gs == 0.0:
            return total, s, False
        gm = float(g(np.array([s - h]))[0])
        slope = (math.log(gs) - math.log(gm)) / h
        if asym is not None:
            beta, k, ck = asym
            if abs(beta) <= 1e-12:
                # pure log decay (1 + ck s)^k, k < -1
                bound = gs * (1.0 + ck * s) / (ck * (-k - 1.0))
            else:
                bound = gs / -max(slope, beta)
        else:
            bound = gs / -slope if slope < 0 else math.inf
        if bound <= TAIL_RTOL * (abs(total) + ref):
            return total, s, False
        width *= 1.5
    if asym is None:
        return math.inf, s, True
    return total, s, False


def _check_common(alpha, n, lam, mu):
    if int(n) != n or n < 1:
        raise ValueError(f"dimension must be a positive integer, got {n}")
    if not 0 < alpha < n:
        raise ConstraintError("0 < alpha < n", f"alpha={alpha}, n={n}")
    notes = []
    in_hyp = (0 < lam < 1 and 0 < mu < 1 and lam != mu) or (lam == 0 and 0 <= mu < 1)
    if not in_hyp:
        notes.append("parameters outside the boundedness hypotheses "
                     "(0 < lam, mu < 1, lam != mu, or lam = 0 <= mu < 1); checked anyway")
    return notes


def _params(phi, psi, alpha, n, lam, mu):
    return {"phi": repr(phi), "psi": repr(psi), "alpha": alpha, "n": n, "lambda": lam, "mu": mu}


def _edge_slopes_1d(x, y):
    lo, hi = end_slopes(x, y, decades=1.0)
    return lo, hi


def _grow_flag(lo, hi, thr):
    # growth towards the small end means a negative slope there
    return bool((np.isfinite(lo) and -lo > thr) or (np.isfinite(hi) and hi > thr))


def _profiles(u, r, ratio):
    with np.errstate(invalid="ignore"):
        pu = np.array([np.nanmax(row) if np.any(~np.isnan(row)) else np.nan for row in ratio])
        pr = np.array([np.nanmax(col) if np.any(~np.isnan(col)) else np.nan for col in ratio.T])
    return pu, pr


def _finish(cid, phi, psi, alpha, n, lam, mu, u, r, lhs, rhs, integral_divergent, notes, grid_spec,
            threshold):
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = lhs / rhs
    slopes, margins = {}, {}
    if cid == 1:
        lo, hi = _edge_slopes_1d(u, ratio)
        slopes = {"u_low": lo, "u_high": hi}
        margins = {"u_low": float(ratio[0]), "u_high": float(ratio[-1])}
        flag = _grow_flag(lo, hi, threshold)
    else:
        pu, pr = _profiles(u, r, ratio)
        ok_u = ~np.isnan(pu)
        ok_r = ~np.isnan(pr)
        ulo, uhi = _edge_slopes_1d(u[ok_u], pu[ok_u])
        rlo, rhi = _edge_slopes_1d(r[ok_r], pr[ok_r])
        slopes = {"u_low": ulo, "u_high": uhi, "r_low": rlo, "r_high": rhi}
        margins = {"u_low": float(pu[ok_u][0]), "u_high": float(pu[ok_u][-1]),
                   "r_low": float(pr[ok_r][0]), "r_high": float(pr[ok_r][-1])}
        flag = _grow_flag(ulo, uhi, threshold) or _grow_flag(rlo, rhi, threshold)
    flag = flag or integral_divergent or bool(np.any(np.isinf(ratio)))
    finite = ratio[~np.isnan(ratio)]
    if finite.size == 0:
        best, arg = math.nan, (math.nan, math.nan)
    else:
        j = int(np.nanargmax(np.where(np.isnan(ratio), -np.inf, ratio)))
        best = float(ratio.flat[j])
        if cid == 1:
            arg = (float(u[j]), math.nan)
        else:
            iu, ir = np.unravel_index(j, ratio.shape)
            arg = (float(u[iu]), float(r[ir]))
    if flag:
        notes = notes + ["ratio grows towards the edge of the scan; best_constant is a lower bound only"]
    return ConditionReport(
        condition_id=cid, params=_params(phi, psi, alpha, n, lam, mu), best_constant=best, argmax=arg,
        divergence_flag=bool(flag), integral_divergent=bool(integral_divergent), end_slopes=slopes,
        boundary_margins=margins, grid_spec=grid_spec, u=u if cid == 1 else u[:, None],
        r=np.full_like(u, np.nan) if cid == 1 else r[None, :], lhs=lhs, rhs=rhs, notes=notes,
        threshold=threshold)


def _grid_spec(u_grid, r_grid=None):
    spec = {"u_min": float(u_grid[0]), "u_max": float(u_grid[-1]), "u_points": int(len(u_grid)),
            "panels_per_segment": PANELS_PER_SEGMENT, "gauss_nodes": GL_NODES, "tail_rtol": TAIL_RTOL}
    if r_grid is not None:
        spec.update({"r_min": float(r_grid[0]), "r_max": float(r_grid[-1]), "r_points": int(len(r_grid))})
    return spec


def _sorted_grid(g):
    g = np.unique(np.asarray(g, dtype=float))
    if g.size < 2 or np.any(g <= 0):
        raise ValueError("grids need at least two positive points")
    return g


# the three checks -----------------------------------------------------------

def check_condition_1(phi, psi, alpha, n, lam, mu, u_grid=None, threshold=DIVERGENCE_SLOPE):
    """Check ``∫_u^inf t^(alpha/n) Phi^{-1}(t^(lam-1)) dt/t <= C1 Psi^{-1}(u^(mu-1))``."""
    notes = _check_common(alpha, n, lam, mu)
    u = _sorted_grid(default_scan_grid() if u_grid is None else u_grid)
    a = alpha / n

    def g(s):
        return np.exp(a * s) * phi.inverse(np.exp((lam - 1.0) * s))

    s_nodes = np.log(u)
    seg = _segment_integrals(g, s_nodes, [0.0])
    body = np.concatenate([np.cumsum(seg[::-1])[::-1], [0.0]])
    ref = float(body[0]) if body.size else 0.0
    tail, s_end, div = _tail(g, s_nodes[-1], ref, _tail_exponent(phi, a, 1.0 - lam))
    lhs = body + tail
    rhs = np.asarray(psi.inverse(u ** (mu - 1.0)), dtype=float)
    spec = _grid_spec(u)
    spec["truncation_t"] = math.exp(s_end) if s_end < 700 else math.inf
    return _finish(1, phi, psi, alpha, n, lam, mu, u, None, lhs, rhs, div, notes, spec, threshold)


def check_condition_2(phi, psi, alpha, n, lam, mu, u_grid=None, r_grid=None, threshold=DIVERGENCE_SLOPE):
    """Check condition (2) on all grid pairs with ``r > u``."""
    notes = _check_common(alpha, n, lam, mu)
    u = _sorted_grid(default_scan_grid() if u_grid is None else u_grid)
    r = _sorted_grid(u if r_grid is None else r_grid)
    a = alpha / n
    lhs = np.full((u.size, r.size), np.nan)
    rhs = np.full((u.size, r.size), np.nan)
    for j, rj in enumerate(r):
        below = u[u < rj]
        if below.size == 0:
            continue
        c = rj ** lam

        def g(s, c=c):
            return np.exp(a * s) * phi.inverse(c * np.exp(-s))

        nodes = np.concatenate([np.log(below), [math.log(rj)]])
        seg = _segment_integrals(g, nodes, [lam * math.log(rj)])
        integral = np.cumsum(seg[::-1])[::-1]
        first = below ** a * np.asarray(phi.inverse(c / below), dtype=float)
        k = below.size
        lhs[:k, j] = first + integral
        rhs[:k, j] = np.asarray(psi.inverse(rj ** mu / below), dtype=float)
    return _finish(2, phi, psi, alpha, n, lam, mu, u, r, lhs, rhs, False, notes, _grid_spec(u, r), threshold)


def check_condition_3(phi, psi, alpha, n, lam, mu, u_grid=None, r_grid=None, threshold=DIVERGENCE_SLOPE):
    """Check condition (3) on the full ``(u, r)`` product grid."""
    notes = _check_common(alpha, n, lam, mu)
    u = _sorted_grid(default_scan_grid() if u_grid is None else u_grid)
    r = _sorted_grid(u if r_grid is None else r_grid)
    a = alpha / n
    lhs = np.empty((u.size, r.size))
    rhs = np.empty((u.size, r.size))
    s_nodes = np.log(u)
    asym = _tail_exponent(phi, a, 1.0)
    divergent = False
    s_end_max = s_nodes[-1]
    for j, rj in enumerate(r):
        c = rj ** lam

        def g(s, c=c):
            return np.exp(a * s) * phi.inverse(c * np.exp(-s))

        seg = _segment_integrals(g, s_nodes, [lam * math.log(rj)])
        body = np.concatenate([np.cumsum(seg[::-1])[::-1], [0.0]])
        tail, s_end, div = _tail(g, s_nodes[-1], float(body[0]), asym)
        divergent |= div
        s_end_max = max(s_end_max, s_end)
        lhs[:, j] = body + tail
        rhs[:, j] = np.asarray(psi.inverse(rj ** mu / u), dtype=float)
    spec = _grid_spec(u, r)
    spec["truncation_t"] = math.exp(s_end_max) if s_end_max < 700 else math.inf
    return _finish(3, phi, psi, alpha, n, lam, mu, u, r, lhs, rhs, divergent, notes, spec, threshold)


# exact power-case arithmetic ------------------------------------------------

def _frac(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x).limit_denominator(10 ** 6)


def power_case_relations(p, q, lam, mu, alpha, n):
    """Exact relations for ``Phi = u^p``, ``Psi = u^q``.

    Reports the Spanne-Peetre relations and the admissibility bound, plus
    the exact criterion for each condition obtained by comparing exponents:

    * (1) holds iff ``alpha/n + (lam-1)/p = (mu-1)/q`` (this forces
      ``p < n(1-lam)/alpha``);
    * (2) holds iff that equality holds and ``lam/p <= mu/q``;
    * (3) holds iff ``1/q = 1/p - alpha/n`` and ``lam/p = mu/q``.
    """
    p, q, lam, mu, alpha, n = (_frac(x) for x in (p, q, lam, mu, alpha, n))
    a = alpha / n
    rel = [
        ("1/q = 1/p - alpha/n", 1 / q == 1 / p - a),
        ("lambda/p = mu/q", lam / p == mu / q),
        ("p < n(1-lambda)/alpha", p < n * (1 - lam) / alpha),
    ]
    eq1 = a + (lam - 1) / p == (mu - 1) / q
    predicted = {
        "condition_1": eq1 and p < n * (1 - lam) / alpha,
        "condition_2": eq1 and lam / p <= mu / q,
        "condition_3": rel[0][1] and rel[1][1] and 1 / p > a,
    }
    extra = [
        ("alpha/n + (lambda-1)/p = (mu-1)/q", eq1),
        ("lambda/p <= mu/q", lam / p <= mu / q),
    ]
    return {"valid": all(h for _, h in rel), "relations": rel + extra, "predicted": predicted}
