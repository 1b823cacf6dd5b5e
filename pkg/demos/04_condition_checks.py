"""Grid checks of the three integral conditions on the parameter families.

Run: python demos/04_condition_checks.py
"""

from morrey_orlicz.orlicz import Power
from morrey_orlicz.verify.conditions import (check_condition_1, check_condition_2, check_condition_3,
                                             power_case_relations)
from morrey_orlicz.verify.presets import example_preset


def verdict(rep):
    if rep.divergence_flag:
        return "divergent"
    return f"pass (C >= {rep.best_constant:.4f})" if rep.passed else "fail"


for pid in (1, 2, 3):
    pr = example_preset(pid)
    args = (pr["phi"], pr["psi"], pr["alpha"], pr["n"], pr["lam"], pr["mu"])
    print(f"family {pid}: mu = {pr['mu']:.4f}")
    for check in (check_condition_1, check_condition_2, check_condition_3):
        rep = check(*args)
        print(f"  condition {rep.condition_id}: {verdict(rep)}")

# pure powers: the exponent relations decide every condition exactly
rel = power_case_relations("4/3", "8/5", "1/2", "4/5", "1/4", 1)
print("powers p=4/3, q=8/5, lambda=1/2, mu=4/5, alpha=1/4:", rel["predicted"])
rep = check_condition_1(Power(4 / 3), Power(2.0), 0.5, 1, 0.0, 0.5)
print(f"u^(4/3) -> u^2 with alpha=1/2: best constant {rep.best_constant:.6f}")
