import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from morrey_orlicz.errors import ConstraintError
from morrey_orlicz.geometry import Ball
from morrey_orlicz.morrey import (MorreyParams, central_norm, chi_central_norm_closed, chi_conjugate_bound,
                                  chi_norm_closed, distribution_function, holder_gap, luxemburg_norm, modular,
                                  weak_central_norm, weak_norm)
from morrey_orlicz.orlicz import MaxPower, Power
from morrey_orlicz.testfunction import TestFunction

SQ = MorreyParams(Power(2.0), 0.0, 1)
CHI1 = TestFunction.indicator(1.0, 1)


def test_modular_values():
    assert modular(CHI1, SQ, Ball.centered(1.0, 1), 1.0) == pytest.approx(2.0)
    assert modular(CHI1, SQ, Ball.centered(1.0, 1), math.sqrt(2)) == pytest.approx(1.0)
    x = TestFunction.radial_power(1.0, 1.0, 1)
    assert modular(x, SQ, Ball.centered(1.0, 1), 1.0) == pytest.approx(2 / 3)


def test_norms_of_indicator():
    assert luxemburg_norm(CHI1, SQ, Ball.centered(1.0, 1)) == pytest.approx(math.sqrt(2), rel=1e-12)
    x = TestFunction.radial_power(1.0, 1.0, 1)
    assert luxemburg_norm(x, SQ, Ball.centered(1.0, 1)) == pytest.approx(math.sqrt(2 / 3), rel=1e-10)
    assert central_norm(CHI1, SQ).value == pytest.approx(math.sqrt(2), rel=1e-10)
    half = MorreyParams(Power(2.0), 0.5, 1)
    assert central_norm(CHI1, half).value == pytest.approx(2 ** 0.25, rel=1e-9)


def test_zero_function():
    assert luxemburg_norm(TestFunction.zero(1), SQ, Ball.centered(1.0, 1)) == 0.0


def test_negative_lambda_blows_up():
    # with lam < 0 the Morrey weight forces an infinite norm on small balls
    prm = MorreyParams(Power(2.0), -0.5, 1)
    res = central_norm(CHI1, prm)
    assert res.at_edge or res.value > 10 * central_norm(CHI1, SQ).value


@settings(max_examples=25, deadline=None)
@given(st.floats(1.1, 4), st.floats(0, 0.9), st.floats(0.1, 10), st.floats(0.1, 10), st.integers(1, 2))
def test_indicator_closed_form(p, lam, t, r, n):
    prm = MorreyParams(Power(p), lam, n)
    f = TestFunction.indicator(t, n)
    assert luxemburg_norm(f, prm, Ball.centered(r, n)) == pytest.approx(chi_norm_closed(prm, t, r), rel=1e-7)
    assert central_norm(f, prm).value == pytest.approx(chi_central_norm_closed(prm, t), rel=1e-6)


@settings(max_examples=8, deadline=None)
@given(st.floats(0.05, 20), st.floats(0.2, 3))
def test_homogeneity(k, t):
    prm = MorreyParams(MaxPower(1.5, 3.0), 0.3, 1)
    f = TestFunction.indicator(t, 1) + TestFunction.radial_power(-0.3, t / 2, 1)
    b = Ball((0.2,), 1.3)
    assert luxemburg_norm(f * k, prm, b) == pytest.approx(k * luxemburg_norm(f, prm, b), rel=1e-8)


def test_modular_at_norm_is_weight():
    prm = MorreyParams(MaxPower(1.5, 3.0), 0.4, 2)
    f = TestFunction.indicator(1.0, 2) * 3 + TestFunction.radial_power(0.5, 2.0, 2)
    b = Ball.centered(1.5, 2)
    eps = luxemburg_norm(f, prm, b)
    # the modular is normalised by |B|^lam, so it equals 1 at the norm
    assert modular(f, prm, b, eps) == pytest.approx(1.0, rel=1e-7)
    assert modular(f, prm, b, eps * 1.01) < 1.0 < modular(f, prm, b, eps * 0.99)


def test_distribution_and_weak():
    assert distribution_function(CHI1, Ball.centered(1.0, 1), 0.5) == pytest.approx(2.0)
    assert distribution_function(CHI1, Ball.centered(1.0, 1), 1.0) == 0.0
    b = Ball.centered(1.0, 1)
    assert weak_norm(CHI1, SQ, b) == pytest.approx(math.sqrt(2), rel=1e-9)
    x = TestFunction.radial_power(1.0, 1.0, 1)
    assert weak_norm(x, SQ, b) <= luxemburg_norm(x, SQ, b) * (1 + 1e-9)


@settings(max_examples=6, deadline=None)
@given(st.floats(0.2, 3), st.floats(-0.4, 1.5), st.floats(0, 0.8))
def test_weak_below_strong(t, beta, lam):
    prm = MorreyParams(Power(1.7), lam, 1)
    f = TestFunction.radial_power(beta, t, 1)
    assert weak_central_norm(f, prm).value <= central_norm(f, prm).value * (1 + 1e-6)


def test_closed_forms_need_unit_lambda():
    with pytest.raises(ConstraintError):
        chi_norm_closed(MorreyParams(Power(2.0), 1.5, 1), 1.0, 1.0)


def test_conjugate_bound():
    res = chi_conjugate_bound(SQ, Ball.centered(1.0, 1), 1.0)
    assert res["bound"] == pytest.approx(math.sqrt(2))
    assert res["measured"] == pytest.approx(1 / math.sqrt(2))
    assert res["measured"] <= res["bound"]


def test_holder_examples():
    b = Ball.centered(1.0, 1)
    h = holder_gap(CHI1, CHI1, SQ, b)
    assert (h["lhs"], h["rhs"]) == pytest.approx((2.0, 2.0))
    h = holder_gap(CHI1, TestFunction.zero(1), SQ, b)
    assert (h["lhs"], h["rhs"]) == (0.0, 0.0)


def test_holder_random_pairs():
    rng = np.random.default_rng(5)
    for _ in range(15):
        prm = MorreyParams(Power(float(rng.uniform(1.2, 3))), float(rng.uniform(0, 1)), 1)
        f = TestFunction.indicator(float(rng.uniform(0.2, 2)), 1) * float(rng.uniform(-2, 2))
        g = TestFunction.radial_power(float(rng.uniform(-0.4, 1)), float(rng.uniform(0.2, 2)), 1)
        h = holder_gap(f, g, prm, Ball.centered(float(rng.uniform(0.3, 3)), 1))
        assert h["lhs"] <= h["rhs"] * (1 + 1e-8)
