import math

import numpy as np
import pytest
from scipy import integrate

from morrey_orlicz.errors import ConstraintError, DivergenceError
from morrey_orlicz.potential import (OperatorParams, ball_average, hedberg_constant, hedberg_gap,
                                     maximal_function, riesz_potential, sphere_mean_kernel)
from morrey_orlicz.testfunction import TestFunction

CHI1 = TestFunction.indicator(1.0, 1)
HALF = OperatorParams(0.5, 1)


def test_operator_params():
    with pytest.raises(ConstraintError):
        OperatorParams(1.0, 1)
    with pytest.raises(ConstraintError):
        OperatorParams(0.0, 2)


def test_hedberg_constant_values():
    assert hedberg_constant(1, 0.5) == pytest.approx(4 / (math.sqrt(2) - 1), rel=1e-14)
    # n = 2, alpha = 1: v_2 = pi and sum 2^(k(1-2)) 2^2 ... gives 4 pi
    assert hedberg_constant(2, 1.0) == pytest.approx(4 * math.pi, rel=1e-12)


@pytest.mark.parametrize("method", ["parts", "spherical"])
def test_riesz_interval_at_center(method):
    # ∫_{-1}^{1} |y|^(-1/2) dy = 4
    assert riesz_potential(CHI1, (0.0,), HALF, method=method) == pytest.approx(4.0, rel=1e-9)


@pytest.mark.parametrize("method", ["parts", "spherical"])
def test_riesz_interval_outside(method):
    # ∫_{-1}^{1} |2-y|^(-1/2) dy = 2(sqrt 3 - 1)
    want = 2 * (math.sqrt(3) - 1)
    assert riesz_potential(CHI1, (2.0,), HALF, method=method) == pytest.approx(want, rel=1e-9)


@pytest.mark.parametrize("n, alpha, x", [(2, 1.0, (0.4, 0.3)), (3, 1.5, (1.7, 0.0, 0.2)), (2, 0.5, (3.0, 1.0))])
def test_two_routes_agree(n, alpha, x):
    prm = OperatorParams(alpha, n)
    f = TestFunction.indicator(1.0, n) * 2 + TestFunction.radial_power(-0.3, 0.7, n)
    a = riesz_potential(f, x, prm, method="parts")
    b = riesz_potential(f, x, prm, method="spherical")
    assert a == pytest.approx(b, rel=1e-8)


def test_riesz_direct_quadrature_plane():
    prm = OperatorParams(1.0, 2)
    f = TestFunction.indicator(1.0, 2)
    x = np.array([2.0, 0.0])
    want = integrate.dblquad(lambda t, s: s / math.hypot(x[0] - s * math.cos(t), s * math.sin(t)),
                             0, 1, 0, 2 * math.pi, epsabs=1e-12, epsrel=1e-12)[0]
    assert riesz_potential(f, tuple(x), prm) == pytest.approx(want, rel=1e-8)


def test_sphere_mean_kernel_against_quadrature():
    s, d, alpha = 0.7, 1.3, 0.8
    n = 3
    # mean over the unit sphere of |d e1 - s w|^(alpha - n)
    want = 0.5 * integrate.quad(lambda c: (d * d + s * s - 2 * d * s * c) ** ((alpha - n) / 2), -1, 1)[0]
    assert sphere_mean_kernel(s, d, n, alpha) == pytest.approx(want, rel=1e-10)


def test_riesz_divergence():
    f = TestFunction.radial_power(-0.5, 1.0, 1)
    with pytest.raises(DivergenceError):
        riesz_potential(f, (0.0,), HALF)
    with pytest.raises(DivergenceError):
        riesz_potential(TestFunction.constant(1.0, 1), (0.0,), HALF)


def test_riesz_monotone_in_function():
    rng = np.random.default_rng(3)
    prm = OperatorParams(0.7, 2)
    for _ in range(5):
        f = TestFunction.indicator(float(rng.uniform(0.3, 1)), 2, center=tuple(rng.uniform(-1, 1, 2)))
        g = f + TestFunction.indicator(float(rng.uniform(0.3, 1)), 2, center=tuple(rng.uniform(-1, 1, 2)))
        x = tuple(rng.uniform(-2, 2, 2))
        assert riesz_potential(g, x, prm) >= riesz_potential(f, x, prm) * (1 - 1e-10)


def test_truncation_grows_with_radius():
    prm = OperatorParams(0.5, 1)
    vals = [riesz_potential(CHI1, (2.0,), prm, radius=r) for r in (0.5, 1.0, 2.0, 3.0, 4.0, 8.0)]
    assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))
    assert vals[-1] == pytest.approx(riesz_potential(CHI1, (2.0,), prm), rel=1e-10)


def test_maximal_function_values():
    assert maximal_function(CHI1, (0.0,)) == pytest.approx(1.0)
    # centered at 2 the best ball has radius 3: 2 / 6
    assert maximal_function(CHI1, (2.0,)) == pytest.approx(1 / 3, rel=1e-9)
    assert maximal_function(TestFunction.constant(-2.0, 1), (5.0,)) == 2.0
    assert math.isinf(maximal_function(TestFunction.radial_power(-0.5, 1.0, 1), (0.0,)))


def test_maximal_sublinear():
    rng = np.random.default_rng(9)
    for _ in range(6):
        f = TestFunction.indicator(float(rng.uniform(0.2, 2)), 1, center=(float(rng.uniform(-2, 2)),))
        g = TestFunction.indicator(float(rng.uniform(0.2, 2)), 1, center=(float(rng.uniform(-2, 2)),)) * -2
        x = (float(rng.uniform(-3, 3)),)
        assert maximal_function(f + g, x) <= (maximal_function(f, x) + maximal_function(g, x)) * (1 + 1e-9)
        assert ball_average(f, x, 1.0) <= maximal_function(f, x) * (1 + 1e-12)


def test_hedberg_specific_case():
    g = hedberg_gap(CHI1, (0.0,), 1.0, HALF)
    assert g["lhs"] == pytest.approx(4.0, abs=1e-6)
    assert g["rhs"] == pytest.approx(9.65685, abs=1e-4)


def test_hedberg_plane_random():
    rng = np.random.default_rng(21)
    for _ in range(10):
        alpha = float(rng.uniform(0.2, 1.8))
        f = TestFunction.indicator(float(rng.uniform(0.3, 2)), 2, center=tuple(rng.uniform(-1, 1, 2)),
                                   coef=float(rng.uniform(-2, 2)))
        f = f + TestFunction.indicator(float(rng.uniform(0.3, 2)), 2, coef=float(rng.uniform(-2, 2)))
        x = tuple(rng.uniform(-2, 2, 2))
        r = float(10 ** rng.uniform(-1, 1))
        g = hedberg_gap(f, x, r, OperatorParams(alpha, 2))
        assert g["lhs"] <= g["rhs"] * (1 + 1e-6)
