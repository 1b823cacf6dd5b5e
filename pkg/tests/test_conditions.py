from fractions import Fraction as F

import numpy as np
import pytest

from morrey_orlicz.orlicz import MaxPower, Power
from morrey_orlicz.verify.conditions import (DIVERGENCE_SLOPE, check_condition_1, check_condition_2,
                                             check_condition_3, power_case_relations)
from morrey_orlicz.verify.presets import example_preset, spanne_peetre_preset

# exponent gaps below this are not resolvable by the edge-slope test
RESOLVABLE_GAP = F(1, 20)


def _power_sample(count, seed):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.integers(1, 3))
        alpha = F(int(rng.integers(1, 8 * n)), 8)
        p = F(int(rng.integers(9, 30)), 8)
        lam = F(int(rng.integers(0, 8)), 10)
        mode = int(rng.integers(0, 3))
        if mode == 0:
            if 1 / p - alpha / n <= 0:
                continue
            q = 1 / (1 / p - alpha / n)
        else:
            q = F(int(rng.integers(9, 48)), 8)
        mu = 1 + q * (alpha / n + (lam - 1) / p) if mode < 2 else F(int(rng.integers(0, 10)), 10)
        if not (0 <= mu < 1) or not (1 < q <= 6) or lam == mu:
            continue
        gaps = (alpha / n + (lam - 1) / p - (mu - 1) / q, lam / p - mu / q)
        if any(g != 0 and abs(g) < RESOLVABLE_GAP for g in gaps):
            continue
        out.append((p, q, lam, mu, alpha, n))
    return out


@pytest.mark.parametrize("case", _power_sample(20, seed=4))
def test_power_case_agreement(case):
    p, q, lam, mu, alpha, n = case
    pred = power_case_relations(p, q, lam, mu, alpha, n)["predicted"]
    args = (Power(float(p)), Power(float(q)), float(alpha), n, float(lam), float(mu))
    got = {"condition_1": check_condition_1(*args).passed, "condition_2": check_condition_2(*args).passed,
           "condition_3": check_condition_3(*args).passed}
    assert got == pred


def test_power_relations_exact():
    rel = power_case_relations(F(3, 2), F(12, 5), F(1, 2), F(4, 5), F(1, 2), 2)
    assert rel["valid"]
    assert all(rel["predicted"].values())
    # (2) can hold while (3) does not
    rel = power_case_relations(F(4, 3), F(8, 5), F(1, 2), F(4, 5), F(1, 4), 1)
    assert rel["predicted"] == {"condition_1": True, "condition_2": True, "condition_3": False}


def test_power_constant_four():
    rep = check_condition_1(Power(4 / 3), Power(2.0), 0.5, 1, 0.0, 0.5)
    assert rep.passed
    assert rep.best_constant == pytest.approx(4.0, rel=0.05)
    assert rep.lower_bound_only


def test_boundary_exponent_diverges():
    # Phi = u^2 with alpha = 1/2, n = 1 and lambda = 0 sits at p = n(1-lambda)/alpha
    rep = check_condition_1(Power(2.0), Power(4.0), 0.5, 1, 0.0, 0.5)
    assert not rep.passed


@pytest.mark.parametrize("pid", [1, 2, 3])
def test_preset_verdicts(pid):
    pr = example_preset(pid)
    args = (pr["phi"], pr["psi"], pr["alpha"], pr["n"], pr["lam"], pr["mu"])
    assert check_condition_1(*args).passed
    assert check_condition_2(*args).passed
    r3 = check_condition_3(*args)
    if pid == 1:
        assert r3.passed
    else:
        assert r3.divergence_flag


def test_equal_exponents_flagged():
    rep = check_condition_2(Power(2.0), Power(2.0), 0.5, 1, 0.3, 0.3)
    assert rep.divergence_flag
    assert rep.notes


def test_three_implies_two():
    cases = [spanne_peetre_preset(), spanne_peetre_preset(1, 0.25, 0.2, 2.0), example_preset(1)]
    for pr in cases:
        args = (pr["phi"], pr["psi"], pr["alpha"], pr["n"], pr["lam"], pr["mu"])
        if check_condition_3(*args).passed:
            assert check_condition_2(*args).passed


def test_report_fields():
    pr = example_preset(2)
    rep = check_condition_2(pr["phi"], pr["psi"], pr["alpha"], pr["n"], pr["lam"], pr["mu"])
    assert rep.threshold == DIVERGENCE_SLOPE
    assert set(rep.end_slopes) == {"u_low", "u_high", "r_low", "r_high"}
    curve = np.asarray(rep.margin_curve)
    assert curve.shape[1] == 5
    finite = np.isfinite(curve[:, 4])
    assert np.max(curve[finite, 4]) == pytest.approx(rep.best_constant)


def test_maxpower_same_space():
    rep = check_condition_1(MaxPower(1.5, 2.5), MaxPower(1.5, 2.5), 0.25, 1, 0.0, 0.0)
    assert not rep.passed
