"""Numerical experiments: operator norm ratios, witnesses and embeddings."""

import math

import numpy as np

from .._numerics import end_slopes, golden_max_scalar
from ..errors import DivergenceError
from ..geometry import Ball, ball_volume, intersection_volume, unit_ball_volume
from ..morrey import MorreyParams, central_norm
from ..potential import OperatorParams, riesz_potential
from ..testfunction import Atom, TestFunction
from .conditions import DIVERGENCE_SLOPE, check_condition_1, check_condition_2, default_scan_grid
from .ledger import constant_ledger

__all__ = ["riesz_majorant", "boundedness_experiment", "nontriviality_check", "embedding_check",
           "witness_norm"]

MAJORANT_POINTS = 80
TAIL_FACTOR = 4.0


def _decreasing_about_center(atom):
    # symmetric decreasing profiles have symmetric decreasing potentials
    return atom.inner == 0.0 and atom.beta <= 0.0


def riesz_majorant(f, prm, points=MAJORANT_POINTS, tail_factor=TAIL_FACTOR):
    """Radial step function (plus a power tail) dominating ``I_alpha |f|``.

    Each atom's potential is radial about the atom's center, so on a sphere
    ``|x| = s`` it is at most its value at the distance from that center to
    the sphere.  On a shell ``s_i <= |x| < s_(i+1)`` the bound uses the
    smallest such distance, which is exact for atoms with a symmetric
    decreasing profile and a sampled envelope otherwise.  Beyond
    ``tail_factor`` times the support radius ``S`` the bound
    ``||f||_1 (|x| - S)^(alpha-n)`` is used.

    Returns ``(g, exact)`` where ``exact`` tells whether every atom was
    handled by the monotone argument.
    """
    n, alpha = prm.dim, prm.alpha
    S = f.support_radius()
    if not math.isfinite(S):
        raise DivergenceError("the majorant needs a compactly supported function")
    if S == 0.0:
        return TestFunction(n), True
    s_top = tail_factor * S
    nodes = set(np.geomspace(S * 1e-4, s_top, points))
    for a in f.atoms:
        d = float(np.linalg.norm(a.center))
        for e in (0.0, a.inner, a.outer):
            for v in (d - e, d + e):
                if 0 < v < s_top:
                    nodes.add(v)
    s = np.array(sorted(nodes))
    lo_edges = np.concatenate([[0.0], s[:-1]])
    hi_edges = s
    cell = np.zeros(len(s))
    exact = True
    for a in f.atoms:
        single = TestFunction(n, atoms=[Atom((0.0,) * n, a.inner, a.outer, abs(a.coef), a.beta)])
        d = float(np.linalg.norm(a.center))
        cache = {}

        def h(delta):
            key = round(delta, 15)
            if key not in cache:
                cache[key] = riesz_potential(single, (delta,) + (0.0,) * (n - 1), prm)
            return cache[key]

        mono = _decreasing_about_center(a)
        exact &= mono
        for i, (lo, hi) in enumerate(zip(lo_edges, hi_edges)):
            near = 0.0 if lo <= d <= hi else min(abs(d - lo), abs(d - hi))
            if near == 0.0 and _decreasing_about_center(a) and a.beta < 0:
                # singular potential at the center when beta + alpha <= 0 is excluded upstream
                pass
            if mono:
                cell[i] += h(near)
            else:
                cell[i] += max(h(near), h(abs(d - lo)), h(abs(d - hi)))
    pieces = [(lo, hi, v) for lo, hi, v in zip(lo_edges, hi_edges, cell) if v > 0]
    l1 = f.ball_integral(Ball.centered(S * (1 + 1e-12), n), "abs")
    tail_coef = l1 * (1.0 - 1.0 / tail_factor) ** (alpha - n)
    pieces.append((s_top, math.inf, tail_coef, alpha - n))
    return TestFunction(n, pieces=pieces), exact


def boundedness_experiment(phi, psi, alpha, n, lam, mu, test_set, radius_grid=None, C0=1.0, c0=1.0,
                           C1=None, C2=None):
    """Ratios ``||I_alpha f||_{Psi,mu} / ||f||_{Phi,lam}`` against the ledger ``C3``.

    The numerator uses the radial majorant of :func:`riesz_majorant`, so the
    ratios over-estimate the true ones.  ``C1``, ``C2`` default to the best
    constants of the grid checks (at least 1).
    """
    notes = []
    divergent = False
    if C1 is None or C2 is None:
        r1 = check_condition_1(phi, psi, alpha, n, lam, mu)
        r2 = check_condition_2(phi, psi, alpha, n, lam, mu)
        divergent = r1.divergence_flag or r2.divergence_flag
        if not (r1.passed and r2.passed):
            notes.append("conditions (1)-(2) not verified on the scan grid; ledger constants are not valid")
        C1 = max(1.0, r1.best_constant) if C1 is None else C1
        C2 = max(1.0, r2.best_constant) if C2 is None else C2
    ledger = constant_ledger(n, alpha, lam, mu, C0, c0, C1, C2) if math.isfinite(C1) and math.isfinite(C2) \
        else None
    op = OperatorParams(alpha, n)
    src, dst = MorreyParams(phi, lam, n), MorreyParams(psi, mu, n)
    rows = []
    for k, f in enumerate(test_set):
        row = {"index": k, "function": repr(f)}
        if f.is_zero():
            row.update(norm_f=0.0, norm_If=0.0, ratio=0.0, exact_majorant=True)
            rows.append(row)
            continue
        try:
            g, exact = riesz_majorant(f, op)
        except DivergenceError as exc:
            row.update(skipped=str(exc))
            rows.append(row)
            continue
        nf = central_norm(f, src).value
        S = f.support_radius()
        grid = radius_grid if radius_grid is not None else \
            np.unique(np.concatenate([S * np.logspace(-3, 3, 129), g.radial_breakpoints()]))
        ng = central_norm(g, dst, grid).value
        row.update(norm_f=nf, norm_If=ng, ratio=ng / nf if nf > 0 else math.inf, exact_majorant=exact)
        rows.append(row)
    ratios = [r["ratio"] for r in rows if "ratio" in r]
    max_ratio = max(ratios) if ratios else math.nan
    C3 = ledger.C3 if ledger else math.nan
    divergent = divergent or not math.isfinite(max_ratio) or any("skipped" in r for r in rows)
    return {"max_ratio": max_ratio, "ledger_C3": C3, "within_bound": bool(max_ratio <= C3),
            "divergence_flag": bool(divergent),
            "ledger": ledger.as_dict() if ledger else None, "per_function": rows, "notes": notes}


def witness_norm(phi, lam, n, R, samples=2001):
    """``sup_{r > R-1} 1/Phi^{-1}(|B_r|^lam / |B_r ∩ B(x_R, 1)|)``.

    For ``lam >= 0`` the expression is nonincreasing once ``r >= R + 1``,
    so the supremum is searched on ``(R-1, R+1]`` and refined.
    """
    center = (float(R),) + (0.0,) * (n - 1)
    unit = Ball(center, 1.0)

    def val(r):
        ov = intersection_volume(Ball.centered(r, n), unit)
        if ov <= 0:
            return 0.0
        return 1.0 / float(phi.inverse(float(ball_volume(r, n)) ** lam / ov))

    rs = (R - 1.0) + 2.0 * np.linspace(0.0, 1.0, samples)[1:]
    vals = np.array([val(r) for r in rs])
    i = int(np.argmax(vals))
    best = float(vals[i])
    if 0 < i < len(rs) - 1:
        _, v = golden_max_scalar(val, rs[i - 1], rs[i + 1], rtol=1e-13)
        best = max(best, v)
    return best


def nontriviality_check(phi, lam, n, R_list, alpha=None, psi=None):
    """Witness norms for ``f_R = chi_{B(x_R, 1)}`` and the lower-bound ratio sequence.

    With ``lam < 0`` the space contains only the zero function and no
    witnesses are produced.  When ``alpha`` and ``psi`` are given the ratio
    ``2^(alpha-n) v_n / Psi^{-1}(1/v_n) / ||f_R||`` is returned for each ``R``.
    """
    if lam < 0:
        return {"nontrivial": False, "witness_norms": [], "ratio_sequence": [], "R": list(R_list)}
    if any(R <= 1 for R in R_list):
        raise ValueError("witness radii must exceed 1")
    norms = [witness_norm(phi, lam, n, R) for R in R_list]
    ratios = []
    if alpha is not None and psi is not None:
        vn = unit_ball_volume(n)
        lower = 2.0 ** (alpha - n) * vn / float(psi.inverse(1.0 / vn))
        ratios = [lower / w for w in norms]
    return {"nontrivial": True, "witness_norms": norms, "ratio_sequence": ratios, "R": list(R_list)}


def embedding_check(phi, psi, lam, mu, u_grid=None, r_grid=None, test_set=None, n=1,
                    threshold=DIVERGENCE_SLOPE):
    """Smallest ``A1``, ``A2`` on the grids and a spot check of the embedding.

    ``A1 = sup_u u / Phi^{-1}(Psi(u)^((lam-1)/(mu-1)))`` and
    ``A2 = sup u / Phi^{-1}(Psi(u) r^(lam-mu))`` over ``Psi^{-1}(r^(mu-1)) < u``;
    the grid for ``r`` is augmented by the constraint boundary for each ``u``.
    """
    if not (0 <= lam < 1 and 0 <= mu < 1):
        raise ValueError("need 0 <= lam, mu < 1")
    u = np.unique(np.asarray(default_scan_grid() if u_grid is None else u_grid, dtype=float))
    r = np.unique(np.asarray(u if r_grid is None else r_grid, dtype=float))
    psi_u = np.asarray(psi.evaluate(u), dtype=float)
    expo = (lam - 1.0) / (mu - 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        a1 = u / np.asarray(phi.inverse(psi_u ** expo), dtype=float)
    # A2 profile: maximise over admissible r for each u
    a2_rows = np.full(u.size, np.nan)
    for i, (ui, pu) in enumerate(zip(u, psi_u)):
        r_b = pu ** (1.0 / (mu - 1.0))
        cand = r[r > r_b]
        cand = np.concatenate([cand, [r_b * (1 + 1e-12)]]) if np.isfinite(r_b) and r_b > 0 else cand
        if cand.size == 0:
            continue
        with np.errstate(divide="ignore", over="ignore"):
            vals = ui / np.asarray(phi.inverse(pu * cand ** (lam - mu)), dtype=float)
        a2_rows[i] = np.max(vals)
    s1 = end_slopes(u, a1)
    ok = ~np.isnan(a2_rows)
    s2 = end_slopes(u[ok], a2_rows[ok]) if np.sum(ok) >= 2 else (math.nan, math.nan)

    def grows(sl):
        lo, hi = sl
        return bool((np.isfinite(lo) and -lo > threshold) or (np.isfinite(hi) and hi > threshold))

    A1 = float(np.max(a1))
    A2 = float(np.nanmax(a2_rows)) if np.any(ok) else 0.0
    divergent = grows(s1) or grows(s2) or not (math.isfinite(A1) and math.isfinite(A2))
    # consistency: the computed A1 indeed satisfies the defining inequality on the grid
    with np.errstate(over="ignore"):
        verified = bool(np.all(np.asarray(phi.evaluate(u / A1)) <= psi_u ** expo * (1 + 1e-9) + 1e-300)) \
            if math.isfinite(A1) and A1 > 0 else False
    out = {"holds": not divergent, "A1": A1, "A2": A2, "A1_slopes": s1, "A2_slopes": s2,
           "A1_verified": verified, "embedding_constant": 2.0 * max(A1, A2)}
    if test_set is None:
        test_set = [TestFunction.indicator(t, n) for t in (0.5, 1.0, 2.0)]
    measured = 0.0
    rows = []
    for f in test_set:
        a = central_norm(f, MorreyParams(phi, lam, n)).value
        b = central_norm(f, MorreyParams(psi, mu, n)).value
        ratio = a / b if b > 0 else (0.0 if a == 0 else math.inf)
        rows.append({"function": repr(f), "norm_phi": a, "norm_psi": b, "ratio": ratio})
        measured = max(measured, ratio)
    out["measured_constant"] = measured
    out["inequality_holds"] = bool(measured <= out["embedding_constant"] * (1 + 1e-6)) if not divergent else None
    out["per_function"] = rows
    return out
