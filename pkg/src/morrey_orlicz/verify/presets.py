"""Parameter families with derived exponents and validated constraints.

Family 1: ``Phi^{-1}(v) = v^(1/p)`` below 1 and ``v^(1/p) (1+ln v)^(-a)``
above, with ``Psi = u^q``.
Family 2: ``Phi = max(u^p1, u^p2)``, ``Psi = max(u^q1, u^q2)``.
Family 3: two-branch power-log inverses for both functions.

Dependent exponents come from ``1/q = 1/p - alpha/n`` and ``mu = lam q / p``
(using the upper-branch exponents where there are two).
"""

import math

from ..errors import ConstraintError
from ..orlicz import InversePowerLog, MaxPower, Power

__all__ = ["example_preset", "spanne_peetre_preset", "PRESET_DEFAULTS"]

PRESET_DEFAULTS = {
    1: {"n": 1, "alpha": 0.25, "lam": 0.0, "p": 2.0, "a": 0.1},
    2: {"n": 1, "alpha": 0.25, "lam": 0.5, "p1": 4.0 / 3.0, "p2": 1.6},
    3: {"n": 1, "alpha": 0.25, "lam": 0.5, "p1": 4.0 / 3.0, "p2": 1.6, "a": 0.04, "b": 0.2},
}

_TOL = 1e-12


def _require(ok, name, detail=""):
    if not ok:
        raise ConstraintError(name, detail)


def _conj_exponent(p, alpha, n):
    inv = 1.0 / p - alpha / n
    _require(inv > 0, "1/p - alpha/n > 0", f"p={p}, alpha={alpha}, n={n}")
    return 1.0 / inv


def _base(params):
    n, alpha, lam = params["n"], params["alpha"], params["lam"]
    _require(int(n) == n and n >= 1, "n positive integer", f"n={n}")
    _require(0 < alpha < n, "0 < alpha < n", f"alpha={alpha}, n={n}")
    return int(n), float(alpha), float(lam)


def example_preset(id, params=None):
    """Construct family ``id`` from free parameters.

    ``params`` overrides :data:`PRESET_DEFAULTS`.  Returns a dict with
    ``phi, psi, lam, mu, n, alpha`` and a ``constraint_report`` listing each
    checked constraint; raises :class:`ConstraintError` naming the first
    violated one.
    """
    if id not in PRESET_DEFAULTS:
        raise ValueError(f"unknown preset {id}; choose 1, 2 or 3")
    prm = dict(PRESET_DEFAULTS[id])
    prm.update(params or {})
    n, alpha, lam = _base(prm)
    checks = []

    def check(ok, name, detail=""):
        checks.append((name, bool(ok)))
        _require(ok, name, detail)

    if id == 1:
        p, a = float(prm["p"]), float(prm["a"])
        check(0 <= lam < 1, "0 <= lambda < 1", f"lambda={lam}")
        check(1 < p < n * (1 - lam) / alpha, "1 < p < n(1-lambda)/alpha", f"p={p}")
        bound = math.sqrt(1 - 1 / p) - (1 - 1 / p)
        check(0 <= a <= bound + _TOL, "0 <= a <= sqrt(1-1/p) - (1-1/p)", f"a={a}, bound={bound:.6g}")
        q = _conj_exponent(p, alpha, n)
        mu = lam * q / p
        check(p < q, "1 < p < q", f"q={q}")
        phi = InversePowerLog(p, 0.0, p, a)
        psi = Power(q)
        derived = {"q": q, "mu": mu}
    elif id == 2:
        p1, p2 = float(prm["p1"]), float(prm["p2"])
        check(0 < lam < 1, "0 < lambda < 1", f"lambda={lam}")
        check(1 < p1 < p2 < n * (1 - lam) / alpha, "1 < p1 < p2 < n(1-lambda)/alpha", f"p1={p1}, p2={p2}")
        q1 = _conj_exponent(p1, alpha, n)
        q2 = _conj_exponent(p2, alpha, n)
        mu = lam * q2 / p2
        check(1 < q1 < q2, "1 < q1 < q2", f"q1={q1}, q2={q2}")
        check(0 < mu < 1, "0 < mu < 1", f"mu={mu}")
        check(lam / p1 < mu / q1, "lambda/p1 < mu/q1", f"{lam / p1:.6g} vs {mu / q1:.6g}")
        phi = MaxPower(p1, p2)
        psi = MaxPower(q1, q2)
        derived = {"q1": q1, "q2": q2, "mu": mu}
    else:
        p1, p2 = float(prm["p1"]), float(prm["p2"])
        a, b = float(prm["a"]), float(prm["b"])
        check(0 < lam < 1, "0 < lambda < 1", f"lambda={lam}")
        check(1 < p1 < p2, "1 < p1 < p2", f"p1={p1}, p2={p2}")
        q1 = _conj_exponent(p1, alpha, n)
        q2 = _conj_exponent(p2, alpha, n)
        mu = lam * q2 / p2
        check(1 < q1 < q2, "1 < q1 < q2", f"q1={q1}, q2={q2}")
        check(0 < mu < 1, "0 < mu < 1", f"mu={mu}")
        check(lam / p1 < mu / q1, "lambda/p1 < mu/q1", f"{lam / p1:.6g} vs {mu / q1:.6g}")
        a_max = (1 - mu) / (1 - lam) * (1 / q1 - 1 / q2)
        check(0 < a <= a_max + _TOL, "0 < a <= (1-mu)/(1-lambda) (1/q1 - 1/q2)", f"a={a}, bound={a_max:.6g}")
        check(0 < b <= 1 / p2 + _TOL, "0 < b <= 1/p2", f"b={b}")
        # the stated bounds do not imply concavity of the upper branch; the
        # construction checks it on a grid and names the failure
        phi = InversePowerLog(p1, a, p2, b)
        checks.append(("Phi^{-1} concave and increasing", True))
        psi = InversePowerLog(q1, a, q2, 0.0, c1=(1 - lam) / (1 - mu))
        checks.append(("Psi^{-1} concave and increasing", True))
        derived = {"q1": q1, "q2": q2, "mu": mu}
    return {"id": id, "phi": phi, "psi": psi, "n": n, "alpha": alpha, "lam": lam, "mu": mu,
            "derived": derived, "params": prm, "constraint_report": checks}


def spanne_peetre_preset(n=2, alpha=0.5, lam=0.5, p=1.5):
    """Pure powers with ``1/q = 1/p - alpha/n`` and ``lam/p = mu/q``."""
    n, alpha, lam = _base({"n": n, "alpha": alpha, "lam": lam})
    _require(0 <= lam < 1, "0 <= lambda < 1", f"lambda={lam}")
    _require(1 < p < n * (1 - lam) / alpha, "1 < p < n(1-lambda)/alpha", f"p={p}")
    q = _conj_exponent(p, alpha, n)
    mu = lam * q / p
    return {"id": "spanne-peetre", "phi": Power(p), "psi": Power(q), "n": n, "alpha": alpha, "lam": lam,
            "mu": mu, "derived": {"q": q, "mu": mu}, "params": {"n": n, "alpha": alpha, "lam": lam, "p": p},
            "constraint_report": []}
