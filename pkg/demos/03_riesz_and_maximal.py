"""Riesz potential by two routes, the maximal function, and the pointwise bound.

Run: python demos/03_riesz_and_maximal.py
"""

from morrey_orlicz.potential import OperatorParams, hedberg_gap, maximal_function, riesz_potential
from morrey_orlicz.testfunction import TestFunction

prm = OperatorParams(0.5, 1)
chi = TestFunction.indicator(1.0, 1)
for x in (0.0, 2.0):
    a = riesz_potential(chi, (x,), prm, method="parts")
    b = riesz_potential(chi, (x,), prm, method="spherical")
    print(f"I_(1/2) chi at x={x}: layer cake {a:.10f}, spherical means {b:.10f}")

print("M chi(2) =", maximal_function(chi, (2.0,)))

# truncated potential against C_H r^alpha M f(x)
g = hedberg_gap(chi, (0.0,), 1.0, prm)
print(f"truncated potential {g['lhs']:.6f} <= {g['rhs']:.6f}")

# a planar example with overlapping pieces of both signs
f = TestFunction.indicator(1.0, 2, center=(0.5, 0.0)) * 2 - TestFunction.indicator(1.0, 2, center=(-0.5, 0.0))
g = hedberg_gap(f, (0.3, 0.2), 1.0, OperatorParams(1.0, 2))
print(f"plane: truncated potential of |f| {g['lhs']:.6f} <= {g['rhs']:.6f}")
