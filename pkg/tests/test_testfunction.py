import math

import numpy as np
import pytest

from morrey_orlicz.geometry import Ball, lens_volume
from morrey_orlicz.testfunction import Atom, TestFunction


def test_construction_and_algebra():
    f = TestFunction.indicator(1.0, 2) * 2 + TestFunction.indicator(2.0, 2, center=(1.0, 0.0))
    assert f.dim == 2 and len(f.atoms) == 2
    assert float(f(np.array([0.5, 0.0]))) == pytest.approx(3.0)
    assert float((-f)(np.array([2.5, 0.0]))) == pytest.approx(-1.0)
    assert f.is_step and f.is_nonnegative
    assert TestFunction.zero(2).is_zero()
    assert f == f * 1.0


def test_linear_integral_exact():
    f = TestFunction.indicator(1.0, 2, center=(0.5, 0.0)) * 2 - TestFunction.indicator(1.0, 2, center=(-0.5, 0))
    b = Ball((0.2, 0.1), 1.3)
    want = 2 * lens_volume(1.0, 1.3, math.hypot(0.3, 0.1), 2) - lens_volume(1.0, 1.3, math.hypot(0.7, 0.1), 2)
    assert f.ball_integral(b) == pytest.approx(want, rel=1e-13)


def _mc_abs(f, b, n, N=2_000_000, seed=0):
    rng = np.random.default_rng(seed)
    R = b.radius
    pts = rng.uniform(-R, R, (N, n))
    inside = np.linalg.norm(pts, axis=1) < R
    vals = np.abs(f(pts + np.asarray(b.center))) * inside
    box = (2 * R) ** n
    return box * vals.mean(), box * vals.std() / math.sqrt(N)


def test_abs_integral_overlapping_plane():
    f = TestFunction.indicator(1.0, 2, center=(0.5, 0.0)) * 2 - TestFunction.indicator(1.0, 2, center=(-0.5, 0))
    b = Ball((0.2, 0.1), 1.3)
    est, se = _mc_abs(f, b, 2)
    assert abs(f.ball_integral(b, "abs") - est) < 5 * se


def test_abs_integral_overlapping_line():
    f = TestFunction.radial_power(-0.3, 1.2, 1) - TestFunction.indicator(0.8, 1, center=(0.5,)) * 2
    b = Ball((0.1,), 1.5)
    # exact pieces: split the line at the atom edges
    from scipy import integrate
    pts = [-1.2, -0.3, 0.0, 1.2, 1.3]
    want = integrate.quad(lambda y: abs(float(f(np.array([[y]]))[0])), -1.4, 1.6, points=pts, limit=400,
                          epsrel=1e-12)[0]
    assert f.ball_integral(b, "abs") == pytest.approx(want, rel=1e-8)


def test_power_piece_line_closed_form():
    f = TestFunction.radial_power(0.5, 2.0, 1, coef=3.0, center=(1.0,))
    b = Ball((0.0,), 1.5)
    # y in (-1, 1.5): r = |y-1| covers (0, 2) on the left and (0, 0.5) on the right
    want = 3 * (2 ** 1.5 + 0.5 ** 1.5) / 1.5
    assert f.ball_integral(b) == pytest.approx(want, rel=1e-13)


def test_radial_power_ball_integral_3d():
    f = TestFunction.radial_power(-1.0, 1.0, 3)
    # 4 pi ∫_0^1 s ds = 2 pi
    assert f.ball_integral(Ball.centered(2.0, 3)) == pytest.approx(2 * math.pi, rel=1e-9)


def test_distribution_and_levels():
    f = TestFunction.indicator(1.0, 1) * 2 + TestFunction.indicator(2.0, 1)
    b = Ball.centered(3.0, 1)
    assert f.distribution(b, 2.5) == pytest.approx(2.0)
    assert f.distribution(b, 0.5) == pytest.approx(4.0)
    assert f.level_values(b) == pytest.approx([1.0, 3.0])
    assert f.sup_abs(b) == pytest.approx(3.0)


def test_support_and_breakpoints():
    f = TestFunction.indicator(1.0, 2, center=(3.0, 0.0))
    assert f.support_radius() == pytest.approx(4.0)
    assert f.radial_breakpoints() == pytest.approx([2.0, 3.0, 4.0])


def test_atom_validation():
    with pytest.raises(ValueError):
        TestFunction(1, atoms=[Atom((0.0, 0.0), 0.0, 1.0, 1.0, 0.0)])
