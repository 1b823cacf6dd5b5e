"""Closed-form chain of constants in the Morrey-Orlicz boundedness estimate.

Inputs are the dimension and order, the Morrey exponents, the maximal
operator bounds ``C0`` (strong) and ``c0`` (weak), and the condition
constants ``C1``, ``C2``.  Outputs follow the chain

    C5 = C_H 3^alpha v_n^(-alpha/n)
    C6 = 2^(2n - alpha + 2) v_n^(1 - alpha/n)
    C7 = C1 max(4 2^n C0 C5, C6)
    C8 = 4^(lam n) 2^(n+1) v_n^(1 - alpha/n) / (n ln 2)
    C9 = v_n^(-alpha/n) C0 C2 C_H + C8 (C1 + C2)
    C3 = 2 max(2 C7, C9)

and the weak-type variants ``c7, c9, c3`` with ``c0`` in place of ``C0`` and
``c3 = 2 max(4 c7, 2 c9)``.
"""

import math
from dataclasses import asdict, dataclass

from ..errors import ConstraintError
from ..geometry import unit_ball_volume
from ..potential import hedberg_constant

__all__ = ["ConstantLedger", "constant_ledger"]


@dataclass(frozen=True)
class ConstantLedger:
    n: int
    alpha: float
    lam: float
    mu: float
    C0: float
    c0: float
    C1: float
    C2: float
    C_H: float
    C5: float
    C6: float
    C7: float
    C8: float
    C9: float
    C3: float
    c7: float
    c9: float
    c3: float

    def as_dict(self):
        return asdict(self)


def constant_ledger(n, alpha, lam=0.0, mu=0.0, C0=1.0, c0=1.0, C1=1.0, C2=1.0):
    """Evaluate the constant chain; ``C0, c0, C1, C2`` must be ``>= 1``."""
    for name, val in (("C0", C0), ("c0", c0), ("C1", C1), ("C2", C2)):
        if not val >= 1:
            raise ConstraintError(f"{name} >= 1", f"{name}={val}")
    if not 0 < alpha < n:
        raise ConstraintError("0 < alpha < n", f"alpha={alpha}, n={n}")
    vn = unit_ball_volume(n)
    ch = hedberg_constant(n, alpha)
    c5 = ch * 3.0 ** alpha * vn ** (-alpha / n)
    # powers of two are combined in the exponent so that e.g. n = 1 gives exact values
    lv = math.log2(vn)
    c6 = 2.0 ** ((2 * n - alpha + 2) + (1 - alpha / n) * lv)
    c7 = C1 * max(4.0 * 2 ** n * C0 * c5, c6)
    c8 = 2.0 ** (2 * lam * n + n + 1 + (1 - alpha / n) * lv) / (n * math.log(2.0))
    c9 = vn ** (-alpha / n) * C0 * C2 * ch + c8 * (C1 + C2)
    c3 = 2.0 * max(2.0 * c7, c9)
    w7 = C1 * max(4.0 * 2 ** n * c0 * c5, c6)
    w9 = vn ** (-alpha / n) * c0 * C2 * ch + c8 * (C1 + C2)
    w3 = 2.0 * max(4.0 * w7, 2.0 * w9)
    return ConstantLedger(n=int(n), alpha=float(alpha), lam=float(lam), mu=float(mu), C0=float(C0),
                          c0=float(c0), C1=float(C1), C2=float(C2), C_H=ch, C5=c5, C6=c6, C7=c7, C8=c8,
                          C9=c9, C3=c3, c7=w7, c9=w9, c3=w3)
