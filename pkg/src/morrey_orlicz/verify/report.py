"""JSON and CSV serialisation of verification results.

JSON output keeps insertion order, writes non-finite floats as the strings
``"inf"``, ``"-inf"`` and ``"nan"`` and never includes timestamps, so equal
inputs give byte-identical files.
"""

import csv
import io
import json
import math
from dataclasses import asdict, is_dataclass

import numpy as np

from .conditions import ConditionReport

__all__ = ["to_jsonable", "condition_to_dict", "dumps", "margin_csv"]

CONDITION_CLAIMS = {
    1: "tail integral of t^(alpha/n) Phi^-1(t^(lam-1)) dominated by C1 Psi^-1(u^(mu-1))",
    2: "truncated integral plus endpoint term dominated by C2 Psi^-1(r^mu/u) for r > u",
    3: "full tail integral of t^(alpha/n) Phi^-1(r^lam/t) dominated by C4 Psi^-1(r^mu/u)",
}


def _float(x):
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def to_jsonable(obj):
    if isinstance(obj, ConditionReport):
        return condition_to_dict(obj)
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _float(obj)
    if is_dataclass(obj):
        return to_jsonable(asdict(obj))
    if obj is None or isinstance(obj, str):
        return obj
    return repr(obj)


def condition_to_dict(rep, include_curve=False):
    d = {
        "condition_id": rep.condition_id,
        "claim": CONDITION_CLAIMS[rep.condition_id],
        "params": rep.params,
        "best_constant": rep.best_constant,
        "best_constant_is_lower_bound": rep.lower_bound_only,
        "argmax": list(rep.argmax),
        "passed": rep.passed,
        "divergence_flag": rep.divergence_flag,
        "integral_divergent": rep.integral_divergent,
        "divergence_threshold": rep.threshold,
        "end_slopes": rep.end_slopes,
        "boundary_margins": rep.boundary_margins,
        "grid_spec": rep.grid_spec,
        "notes": rep.notes,
    }
    if include_curve:
        d["margin_curve"] = rep.margin_curve
    return to_jsonable(d)


def dumps(obj):
    return json.dumps(to_jsonable(obj), indent=2, allow_nan=False) + "\n"


def margin_csv(reports):
    """CSV text with columns ``condition, u, r, lhs, rhs, ratio``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["condition", "u", "r", "lhs", "rhs", "ratio"])
    for rep in reports:
        for row in rep.margin_curve:
            w.writerow([rep.condition_id] + [repr(float(x)) for x in row])
    return buf.getvalue()
