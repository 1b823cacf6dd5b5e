"""Seeded property suites summarised as pass/fail counts.

Every suite draws its random cases from ``numpy.random.default_rng(seed)``
and reports only deterministic quantities, so a fixed seed reproduces the
summary exactly.
"""

import math

import numpy as np

from ..geometry import Ball
from ..morrey import (MorreyParams, central_norm, chi_central_norm_closed, chi_conjugate_bound,
                      chi_norm_closed, holder_gap, luxemburg_norm)
from ..orlicz import MaxPower, Power, default_grid, young_product_check
from ..potential import OperatorParams, hedberg_gap
from ..testfunction import TestFunction
from .conditions import check_condition_1, check_condition_2, check_condition_3
from .experiments import embedding_check, nontriviality_check
from .presets import example_preset

__all__ = ["SUITES", "run_suite", "run_all"]


def _summary(name, results):
    failed = [r for r in results if not r["ok"]]
    return {"suite": name, "cases": len(results), "passed": len(results) - len(failed),
            "failed": len(failed), "failures": failed[:10]}


def suite_norms(rng, cases=20):
    out = []
    for _ in range(cases):
        p = float(rng.uniform(1.1, 4.0))
        lam = float(rng.uniform(0.0, 0.9))
        t, r = (float(x) for x in 10 ** rng.uniform(-1, 1, 2))
        n = int(rng.integers(1, 3))
        prm = MorreyParams(Power(p), lam, n)
        f = TestFunction.indicator(t, n)
        got = luxemburg_norm(f, prm, Ball.centered(r, n))
        want = chi_norm_closed(prm, t, r)
        got_c = central_norm(f, prm).value
        want_c = chi_central_norm_closed(prm, t)
        err = max(abs(got / want - 1), abs(got_c / want_c - 1) / 10)
        out.append({"ok": err <= 1e-6, "kind": "chi norm", "p": p, "lam": lam, "t": t, "r": r, "n": n,
                    "rel_err": err})
    for _ in range(cases // 2):
        n = 1
        p = float(rng.uniform(1.2, 3.0))
        prm = MorreyParams(Power(p), float(rng.uniform(0, 1)), n)
        b = Ball((float(rng.uniform(-2, 2)),), float(rng.uniform(0.2, 2)))
        r = float(rng.uniform(0.5, 4))
        if abs(b.center[0]) >= r + b.radius:
            continue
        res = chi_conjugate_bound(prm, b, r)
        out.append({"ok": res["measured"] <= res["bound"] * (1 + 1e-8), "kind": "conjugate bound",
                    "gap": res["gap"]})
        f = TestFunction.indicator(float(rng.uniform(0.2, 2)), n) * float(rng.uniform(0.5, 3))
        g = TestFunction.radial_power(float(rng.uniform(-0.4, 1)), float(rng.uniform(0.2, 2)), n)
        h = holder_gap(f, g, prm, Ball.centered(r, n))
        out.append({"ok": h["lhs"] <= h["rhs"] + 1e-8, "kind": "holder", "lhs": h["lhs"], "rhs": h["rhs"]})
    return _summary("norms", out)


def _random_step(rng, n):
    f = TestFunction(n)
    for _ in range(int(rng.integers(1, 4))):
        c = tuple(float(x) for x in rng.uniform(-2, 2, n))
        f = f + TestFunction.indicator(float(rng.uniform(0.2, 2)), n, center=c, coef=float(rng.uniform(0.1, 3)))
    return f


def suite_hedberg(rng, cases=20):
    out = []
    for _ in range(cases):
        n = int(rng.integers(1, 3))
        alpha = float(rng.uniform(0.1, n - 0.1))
        f = _random_step(rng, n)
        x = tuple(float(v) for v in rng.uniform(-3, 3, n))
        r = float(10 ** rng.uniform(-1, 1))
        h = hedberg_gap(f, x, r, OperatorParams(alpha, n))
        out.append({"ok": h["lhs"] <= h["rhs"] * (1 + 1e-6), "n": n, "alpha": alpha, "r": r,
                    "lhs": h["lhs"], "rhs": h["rhs"]})
    return _summary("hedberg", out)


def suite_young(rng, cases=None):
    specs = [Power(1.0), Power(1.5), Power(2.0), Power(3.0), MaxPower(4 / 3, 8 / 5),
             example_preset(1)["phi"], example_preset(3)["phi"]]
    out = []
    for s in specs:
        res = young_product_check(s, default_grid())
        ok = res["min_ratio"] >= 1 - 1e-4 and res["max_ratio"] <= 2 + 1e-4
        out.append({"ok": bool(ok), "spec": repr(s), "min_ratio": res["min_ratio"], "max_ratio": res["max_ratio"]})
    return _summary("young", out)


def suite_embedding(rng, cases=None):
    out = []
    e = embedding_check(Power(2), Power(4), 0.5, 0.0)
    out.append({"ok": e["holds"] and abs(e["A1"] - 1) <= 1e-3 and abs(e["A2"] - 1) <= 1e-3
                and e["inequality_holds"], "case": "u^2 lam=1/2 vs u^4 mu=0", "A1": e["A1"], "A2": e["A2"]})
    e = embedding_check(MaxPower(1.5, 3), MaxPower(1.5, 3), 0.3, 0.3)
    out.append({"ok": e["holds"] and abs(e["A1"] - 1) <= 1e-3 and abs(e["A2"] - 1) <= 1e-3,
                "case": "identity", "A1": e["A1"], "A2": e["A2"]})
    e = embedding_check(Power(4), Power(2), 0.5, 0.0)
    out.append({"ok": not e["holds"], "case": "u^4 lam=1/2 vs u^2 mu=0 fails", "A1": e["A1"]})
    return _summary("embedding", out)


def suite_witness(rng, cases=None):
    out = []
    res = nontriviality_check(Power(2), 0.5, 1, [2, 4, 8, 16], alpha=0.5, psi=Power(2))
    seq = res["ratio_sequence"]
    out.append({"ok": all(b > a for a, b in zip(seq, seq[1:])), "case": "ratio growth", "ratios": seq})
    res = nontriviality_check(Power(2), -0.5, 1, [2])
    out.append({"ok": not res["nontrivial"], "case": "negative lambda"})
    res = nontriviality_check(Power(2), 0.0, 1, [3])
    out.append({"ok": abs(res["witness_norms"][0] - math.sqrt(2)) <= 1e-9, "case": "lam=0 witness",
                "norm": res["witness_norms"][0]})
    return _summary("witness", out)


def suite_conditions(rng, cases=None):
    out = []
    expect = {1: (True, True, None), 2: (True, True, False), 3: (True, True, False)}
    for pid, want in expect.items():
        pr = example_preset(pid)
        args = (pr["phi"], pr["psi"], pr["alpha"], pr["n"], pr["lam"], pr["mu"])
        got = (check_condition_1(*args).passed, check_condition_2(*args).passed,
               check_condition_3(*args).passed if want[2] is not None else None)
        out.append({"ok": got == want, "case": f"preset {pid}", "verdicts": list(got)})
    rep = check_condition_2(Power(2), Power(2), 0.5, 1, 0.3, 0.3)
    out.append({"ok": rep.divergence_flag, "case": "lam = mu"})
    rep = check_condition_1(Power(4 / 3), Power(2), 0.5, 1, 0.0, 0.5)
    out.append({"ok": abs(rep.best_constant - 4) <= 0.2, "case": "power constant q/(1-mu)",
                "best": rep.best_constant})
    return _summary("conditions", out)


SUITES = {
    "norms": suite_norms,
    "hedberg": suite_hedberg,
    "young": suite_young,
    "embedding": suite_embedding,
    "witness": suite_witness,
    "conditions": suite_conditions,
}


def run_suite(name, seed=0):
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}")
    # each suite gets its own stream so suites are reproducible independently
    rng = np.random.default_rng([int(seed), sorted(SUITES).index(name)])
    return SUITES[name](rng)


def run_all(seed=0):
    results = [run_suite(name, seed) for name in SUITES]
    return {"seed": int(seed), "suites": results,
            "total_cases": sum(r["cases"] for r in results),
            "total_failed": sum(r["failed"] for r in results)}
