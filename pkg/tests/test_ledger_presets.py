import itertools
import math

import pytest

from morrey_orlicz.errors import ConstraintError
from morrey_orlicz.verify.ledger import constant_ledger
from morrey_orlicz.verify.presets import example_preset, spanne_peetre_preset


def test_ledger_reference_values():
    led = constant_ledger(1, 0.5, 0.0, 0.5, C0=2, c0=2, C1=4, C2=5)
    assert led.C6 == 16.0
    assert led.C_H == pytest.approx(4 / (math.sqrt(2) - 1), abs=1e-10)
    assert led.C8 == pytest.approx(4 * math.sqrt(2) / math.log(2), rel=1e-14)
    assert led.C3 == pytest.approx(3027.7587752555, rel=1e-10)
    assert led.c3 == pytest.approx(2 * max(4 * led.c7, 2 * led.c9))


def test_ledger_rejects_small_inputs():
    with pytest.raises(ConstraintError) as exc:
        constant_ledger(1, 0.5, C1=0.5)
    assert exc.value.constraint == "C1 >= 1"
    with pytest.raises(ConstraintError):
        constant_ledger(1, 1.5)


@pytest.mark.parametrize("name", ["C0", "C1", "C2"])
def test_ledger_monotone(name):
    vals = (1.0, 2.0, 4.0)
    for a, b, c in itertools.product(vals, repeat=3):
        base = dict(C0=a, C1=b, C2=c)
        low = constant_ledger(2, 0.7, 0.2, 0.3, c0=1.0, **base)
        base[name] *= 1.5
        high = constant_ledger(2, 0.7, 0.2, 0.3, c0=1.0, **base)
        assert high.C3 >= low.C3 and high.c3 >= low.c3


def test_preset_one():
    pr = example_preset(1)
    assert pr["derived"]["q"] == pytest.approx(1 / (1 / 2 - 1 / 4))
    assert pr["mu"] == 0.0


def test_preset_two_derived():
    pr = example_preset(2)
    assert pr["derived"]["q1"] == pytest.approx(2.0)
    assert pr["derived"]["q2"] == pytest.approx(1 / (1 / 1.6 - 0.25))
    assert pr["mu"] == pytest.approx(0.5 * pr["derived"]["q2"] / 1.6)


@pytest.mark.parametrize("pid, params, rule", [
    (1, {"a": 0.5}, "0 <= a <= sqrt(1-1/p) - (1-1/p)"),
    (1, {"p": 5.0}, "1 < p < n(1-lambda)/alpha"),
    (2, {"lam": 0.0}, "0 < lambda < 1"),
    (2, {"p1": 1.7}, "1 < p1 < p2 < n(1-lambda)/alpha"),
    (3, {"b": 0.9}, "0 < b <= 1/p2"),
])
def test_preset_constraints(pid, params, rule):
    with pytest.raises(ConstraintError) as exc:
        example_preset(pid, params)
    assert exc.value.constraint == rule


def test_spanne_peetre():
    pr = spanne_peetre_preset()
    assert pr["derived"]["q"] == pytest.approx(2.4)
    assert pr["mu"] == pytest.approx(0.8)
