"""The constant chain and a numerical boundedness experiment.

Run: python demos/05_constants_and_boundedness.py
"""

from morrey_orlicz.testfunction import TestFunction
from morrey_orlicz.verify.experiments import boundedness_experiment
from morrey_orlicz.verify.ledger import constant_ledger
from morrey_orlicz.verify.presets import spanne_peetre_preset

led = constant_ledger(1, 0.5, 0.0, 0.5, C0=2, c0=2, C1=4, C2=5)
for k, v in led.as_dict().items():
    print(f"  {k:6s} {v}")

pr = spanne_peetre_preset()
n = pr["n"]
tests = [TestFunction.indicator(t, n) for t in (0.5, 1.0, 2.0)]
tests.append(TestFunction.indicator(1.0, n, center=(1.5, 0.0)) + TestFunction.indicator(0.5, n))
res = boundedness_experiment(pr["phi"], pr["psi"], pr["alpha"], n, pr["lam"], pr["mu"], tests)
print(f"powers p=1.5 -> q={pr['derived']['q']:.2f} in the plane:")
for row in res["per_function"]:
    print(f"  ratio {row['ratio']:.4f}")
print(f"max ratio {res['max_ratio']:.4f} against C3 = {res['ledger_C3']:.1f}")
