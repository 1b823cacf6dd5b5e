"""Acceptance criteria, one test per criterion.

Each test records a single ``PASS``/``FAIL`` line; pytest prints them in
its terminal summary and ``python tests/test_acceptance.py`` prints them
directly.  Oracles here are written out from
closed forms with ``math`` and do not reuse the library's own closed-form
helpers.
"""

import math
import subprocess
import sys

import numpy as np

from morrey_orlicz.geometry import Ball
from morrey_orlicz.morrey import MorreyParams, central_norm, luxemburg_norm
from morrey_orlicz.orlicz import MaxPower, Power, default_grid, young_product_check
from morrey_orlicz.potential import OperatorParams, hedberg_constant, hedberg_gap
from morrey_orlicz.testfunction import TestFunction
from morrey_orlicz.verify.conditions import check_condition_1, check_condition_2, check_condition_3
from morrey_orlicz.verify.experiments import boundedness_experiment, embedding_check, nontriviality_check
from morrey_orlicz.verify.ledger import constant_ledger
from morrey_orlicz.verify.presets import example_preset, spanne_peetre_preset

RESULTS = {}


def _report(k, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {k:2d}: {detail}"
    RESULTS[k] = line
    print(line)
    assert ok, line


def _vol(r, n):
    return 2 * r if n == 1 else math.pi * r * r


def test_01_indicator_norm_oracle():
    rng = np.random.default_rng(2024)
    worst_ball = worst_central = 0.0
    for _ in range(100):
        p = rng.uniform(1.1, 4.0)
        lam = rng.uniform(0.0, 0.9)
        t, r = rng.uniform(0.1, 10.0, 2)
        n = int(rng.integers(1, 3))
        prm = MorreyParams(Power(p), lam, n)
        f = TestFunction.indicator(t, n)
        # Phi^{-1}(v) = v^(1/p) for the power function
        want_ball = 1.0 / (_vol(r, n) ** lam / _vol(min(r, t), n)) ** (1 / p)
        want_central = 1.0 / (_vol(t, n) ** (lam - 1)) ** (1 / p)
        got_ball = luxemburg_norm(f, prm, Ball.centered(r, n))
        got_central = central_norm(f, prm).value
        worst_ball = max(worst_ball, abs(got_ball / want_ball - 1))
        worst_central = max(worst_central, abs(got_central / want_central - 1))
    ok = worst_ball <= 1e-6 and worst_central <= 1e-5
    _report(1, ok, f"indicator norms, max rel err ball {worst_ball:.2e} (<=1e-6), "
                   f"central {worst_central:.2e} (<=1e-5)")


def test_02_young_product():
    specs = [Power(1.0), Power(1.5), Power(2.0), Power(3.0), MaxPower(4 / 3, 8 / 5), MaxPower(1.2, 3.0),
             example_preset(1)["phi"], example_preset(3)["phi"]]
    lo, hi = math.inf, -math.inf
    for s in specs:
        res = young_product_check(s, default_grid(1e-6, 1e6, 64))
        lo, hi = min(lo, res["min_ratio"]), max(hi, res["max_ratio"])
    sq = young_product_check(Power(2.0), default_grid(1e-6, 1e6, 64))["ratios"]
    dev2 = float(np.max(np.abs(sq - 2.0)))
    ok = lo >= 1 - 1e-4 and hi <= 2 + 1e-4 and dev2 <= 1e-6
    _report(2, ok, f"Young product range [{lo:.6f}, {hi:.6f}], Power(2) max dev {dev2:.1e}")


def _random_function(rng, n):
    f = TestFunction(n)
    for _ in range(int(rng.integers(1, 4))):
        c = tuple(rng.uniform(-2, 2, n))
        f = f + TestFunction.indicator(rng.uniform(0.2, 2), n, center=c, coef=rng.uniform(-3, 3))
    return f


def test_03_hedberg():
    rng = np.random.default_rng(7)
    worst = 0.0
    count = 0
    for k in range(200):
        n = int(rng.integers(1, 3))
        alpha = float(rng.uniform(0.1, n - 0.1))
        if n == 1 and k % 4 == 0:
            # radial power piece, integrable and with a finite potential
            beta = float(rng.uniform(max(-0.9, -alpha) + 0.05, 1.0))
            f = TestFunction.radial_power(beta, float(rng.uniform(0.3, 2)), 1) + _random_function(rng, 1)
        else:
            f = _random_function(rng, n)
        x = tuple(rng.uniform(-3, 3, n))
        r = float(10 ** rng.uniform(-1.5, 1.5))
        g = hedberg_gap(f, x, r, OperatorParams(alpha, n))
        worst = max(worst, g["lhs"] / g["rhs"] if g["rhs"] > 0 else 0.0)
        count += 1
    g = hedberg_gap(TestFunction.indicator(1.0, 1), (0.0,), 1.0, OperatorParams(0.5, 1))
    specific = abs(g["lhs"] - 4) <= 1e-6 and abs(g["rhs"] - 9.65685) <= 1e-4
    ok = count == 200 and worst <= 1 + 1e-6 and specific
    _report(3, ok, f"{count} cases, max lhs/rhs {worst:.4f}; specific lhs {g['lhs']:.8f}, "
                   f"rhs {g['rhs']:.6f}")


def test_04_power_condition_constant():
    rep = check_condition_1(Power(4 / 3), Power(2.0), 0.5, 1, 0.0, 0.5)
    ok = rep.passed and abs(rep.best_constant / 4 - 1) <= 0.05
    _report(4, ok, f"power case best constant {rep.best_constant:.5f} vs 4 (5%)")


def test_05_example_verdicts():
    got = {}
    ok = True
    for pid in (1, 2, 3):
        pr = example_preset(pid)
        args = (pr["phi"], pr["psi"], pr["alpha"], pr["n"], pr["lam"], pr["mu"])
        r1, r2, r3 = check_condition_1(*args), check_condition_2(*args), check_condition_3(*args)
        got[pid] = (r1.passed, r2.passed, r3.divergence_flag)
        ok &= r1.passed and r2.passed and (pid == 1 or r3.divergence_flag)
    eq = check_condition_2(Power(2.0), Power(2.0), 0.5, 1, 0.3, 0.3)
    ok &= eq.divergence_flag
    _report(5, bool(ok), f"(c1 pass, c2 pass, c3 divergent): {got}; lambda=mu c2 divergent: "
                         f"{eq.divergence_flag}")


def test_06_constant_ledger():
    led = constant_ledger(1, 0.5, 0.0, 0.5, C0=2, c0=2, C1=4, C2=5)
    ch = 4 / (math.sqrt(2) - 1)
    # hand substitution with v_1 = 2, n = 1, alpha = 1/2
    c5 = ch * math.sqrt(3) / math.sqrt(2)
    c6 = 16.0
    c7 = 4 * max(4 * 2 * 2 * c5, c6)
    c8 = 4 * math.sqrt(2) / math.log(2)
    c9 = 2 * 5 * ch / math.sqrt(2) + c8 * (4 + 5)
    c3 = 2 * max(2 * c7, c9)
    ok = (led.C6 == 16 and abs(led.C_H - ch) <= 1e-10 and abs(hedberg_constant(1, 0.5) - ch) <= 1e-10
          and abs(led.C3 - c3) <= 1e-6)
    _report(6, ok, f"C6 = {led.C6!r}, C_H err {abs(led.C_H - ch):.1e}, C3 = {led.C3:.6f} "
                   f"vs hand chain {c3:.6f}")


def test_07_witness():
    res = nontriviality_check(Power(2.0), 0.5, 1, [2, 4, 8, 16], alpha=0.5, psi=Power(2.0))
    seq = res["ratio_sequence"]
    growing = all(b > a for a, b in zip(seq, seq[1:]))
    trivial = not nontriviality_check(Power(2.0), -0.5, 1, [2, 4])["nontrivial"]
    _report(7, growing and trivial, f"ratios {[round(s, 4) for s in seq]}, lambda=-0.5 trivial: {trivial}")


def test_08_embedding():
    res = embedding_check(Power(2.0), Power(4.0), 0.5, 0.0, n=1)
    ok = (res["holds"] and abs(res["A1"] - 1) <= 1e-3 and abs(res["A2"] - 1) <= 1e-3
          and res["inequality_holds"] and res["measured_constant"] <= 2.0)
    _report(8, bool(ok), f"A1 {res['A1']:.6f}, A2 {res['A2']:.6f}, measured {res['measured_constant']:.4f} "
                         f"<= 2")


def test_09_boundedness():
    pr = spanne_peetre_preset()
    n = pr["n"]
    tests = [TestFunction.indicator(t, n) for t in (0.5, 1.0, 2.0)]
    tests.append(TestFunction.indicator(1.0, n, center=(1.5, 0.0)) + TestFunction.indicator(0.5, n))
    # beta + alpha > 0 keeps the potential finite at the origin
    tests.append(TestFunction.radial_power(-0.25, 1.0, n))
    res = boundedness_experiment(pr["phi"], pr["psi"], pr["alpha"], n, pr["lam"], pr["mu"], tests)
    ok = math.isfinite(res["max_ratio"]) and res["within_bound"] and not res["divergence_flag"]
    _report(9, ok, f"max ratio {res['max_ratio']:.4f} <= C3 {res['ledger_C3']:.1f}, "
                   f"divergence {res['divergence_flag']}")


def test_10_determinism():
    outs = []
    for k in range(2):
        proc = subprocess.run([sys.executable, "-m", "morrey_orlicz", "verify", "--suite", "all", "--seed", "42"],
                              capture_output=True, check=False)
        outs.append((proc.returncode, proc.stdout))
    ok = outs[0] == outs[1] and outs[0][0] == 0 and len(outs[0][1]) > 0
    _report(10, ok, f"two verify runs byte-identical: {outs[0] == outs[1]} ({len(outs[0][1])} bytes)")


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted((k, v) for k, v in globals().items() if k.startswith("test_")):
        try:
            fn()
        except AssertionError:
            failures += 1
    sys.exit(1 if failures else 0)
