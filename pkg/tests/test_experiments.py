import math

import pytest

from morrey_orlicz.orlicz import MaxPower, Power
from morrey_orlicz.potential import OperatorParams, riesz_potential
from morrey_orlicz.testfunction import TestFunction
from morrey_orlicz.verify.experiments import (embedding_check, nontriviality_check, riesz_majorant,
                                              witness_norm)


def test_majorant_dominates():
    prm = OperatorParams(0.5, 2)
    f = TestFunction.indicator(1.0, 2, center=(1.5, 0.0)) + TestFunction.indicator(0.5, 2)
    g, exact = riesz_majorant(f, prm)
    assert exact
    for x in [(0.0, 0.0), (1.5, 0.0), (0.0, 2.0), (-3.0, 1.0), (10.0, 0.0), (0.7, 0.7)]:
        r = math.hypot(*x)
        assert float(g(list(x))) >= riesz_potential(f, x, prm) * (1 - 1e-9), x
        assert r >= 0


def test_witness_lambda_zero():
    assert witness_norm(Power(2.0), 0.0, 1, 3.0) == pytest.approx(math.sqrt(2), rel=1e-9)


def test_witness_sequence():
    res = nontriviality_check(Power(2.0), 0.5, 1, [2, 4, 8, 16], alpha=0.5, psi=Power(2.0))
    seq = res["ratio_sequence"]
    assert all(b > a for a, b in zip(seq, seq[1:]))
    assert nontriviality_check(Power(2.0), -0.5, 1, [2])["nontrivial"] is False
    with pytest.raises(ValueError):
        nontriviality_check(Power(2.0), 0.5, 1, [0.5])


def test_embedding_holds():
    res = embedding_check(Power(2.0), Power(4.0), 0.5, 0.0)
    assert res["holds"] and res["A1_verified"]
    assert res["A1"] == pytest.approx(1.0, abs=1e-3)
    assert res["A2"] == pytest.approx(1.0, abs=1e-3)
    assert res["inequality_holds"]


def test_embedding_identity():
    res = embedding_check(MaxPower(1.5, 3.0), MaxPower(1.5, 3.0), 0.3, 0.3)
    assert res["holds"]
    assert res["A1"] == pytest.approx(1.0, abs=1e-9)


def test_embedding_fails_in_reverse():
    res = embedding_check(Power(4.0), Power(2.0), 0.5, 0.0)
    assert not res["holds"]
    assert res["inequality_holds"] is None
