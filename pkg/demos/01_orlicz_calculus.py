"""Young functions, inverses and complementary functions.

Run: python demos/01_orlicz_calculus.py
"""

import numpy as np

from morrey_orlicz.orlicz import InversePowerLog, MaxPower, Power, conjugate, young_product_check

u = np.array([1e-3, 0.5, 1.0, 2.0, 1e3])

phi = MaxPower(4 / 3, 8 / 5)
print("Phi = max(u^(4/3), u^(8/5))")
print("  Phi(u)         ", np.round(phi(u), 6))
print("  Phi^-1(Phi(u)) ", np.round(phi.inverse(phi(u)), 6))

# the complementary function is computed numerically for this family
conj = conjugate(phi)
print("  Phi*(u)        ", np.round(conj(u), 6))

# Phi^-1(u) Phi*^-1(u) / u always lies between 1 and 2
for spec in (Power(1.5), phi, InversePowerLog(4 / 3, 0.04, 1.6, 0.2)):
    res = young_product_check(spec)
    print(f"  {spec!r:60s} product range [{res['min_ratio']:.4f}, {res['max_ratio']:.4f}]")

# a log correction that is too strong makes Phi non-convex and is rejected
try:
    InversePowerLog(2.0, 0.0, 2.0, 0.25)
except ValueError as exc:
    print("rejected:", exc)
