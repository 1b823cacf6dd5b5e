"""Luxemburg norms on balls and the central Morrey-Orlicz norm.

Run: python demos/02_morrey_norms.py
"""

from morrey_orlicz.geometry import Ball
from morrey_orlicz.morrey import MorreyParams, central_norm, chi_central_norm_closed, luxemburg_norm, weak_central_norm
from morrey_orlicz.orlicz import Power
from morrey_orlicz.testfunction import TestFunction

chi = TestFunction.indicator(1.0, 1)
for lam in (0.0, 0.5):
    prm = MorreyParams(Power(2.0), lam, 1)
    res = central_norm(chi, prm)
    print(f"lambda={lam}: ||chi_(-1,1)|| = {res.value:.8f} (closed form {chi_central_norm_closed(prm, 1.0):.8f}),"
          f" attained at r = {res.argmax_radius:.4f}")

# the norm on single balls, as a function of the radius
prm = MorreyParams(Power(2.0), 0.5, 1)
for r in (0.25, 0.5, 1.0, 2.0, 4.0):
    print(f"  r = {r:5.2f}: {luxemburg_norm(chi, prm, Ball.centered(r, 1)):.6f}")

# a singular radial function and its weak norm
f = TestFunction.radial_power(-0.3, 1.0, 1)
prm = MorreyParams(Power(1.7), 0.3, 1)
print(f"|x|^-0.3 on (-1,1): strong {central_norm(f, prm).value:.6f}, weak {weak_central_norm(f, prm).value:.6f}")
