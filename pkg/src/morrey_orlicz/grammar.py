"""Text forms of Young functions and test functions.

Young functions::

    power:p=2
    maxpow:p1=4/3,p2=8/5
    pwlog:p1=2,a=0,p2=2,b=0.1[,c1=1,c2=1]
    conj(power:p=3)

Test functions are ``+``-separated terms, each optionally prefixed by a
scalar and ``*``::

    chi:t=1                  indicator of B(0, 1)
    chi:c=3;0,t=1            indicator of B((3, 0), 1)
    radpow:beta=-0.5,t=2     |x|^beta on B(0, 2)
    2*chi:t=1 + 1*chi:t=2

Numbers may be written as fractions (``4/3``).  Whitespace is ignored.
"""

from fractions import Fraction

from .errors import GrammarError
from .orlicz import Conjugate, InversePowerLog, MaxPower, Power, conjugate
from .testfunction import TestFunction

__all__ = ["parse_number", "parse_phi", "parse_function", "format_phi"]


def parse_number(text):
    t = text.strip()
    try:
        if "/" in t:
            return float(Fraction(t))
        return float(t)
    except (ValueError, ZeroDivisionError) as exc:
        raise GrammarError(f"not a number: {text!r}") from exc


def _fields(body, allowed, required):
    out = {}
    if body:
        for part in body.split(","):
            if "=" not in part:
                raise GrammarError(f"expected key=value, got {part!r}")
            k, v = part.split("=", 1)
            k = k.strip()
            if k not in allowed:
                raise GrammarError(f"unknown key {k!r}; allowed: {', '.join(allowed)}")
            if k in out:
                raise GrammarError(f"duplicate key {k!r}")
            out[k] = v
    missing = [k for k in required if k not in out]
    if missing:
        raise GrammarError(f"missing key(s): {', '.join(missing)}")
    return out


def parse_phi(text):
    """Parse a Young-function spec."""
    t = "".join(text.split())
    if not t:
        raise GrammarError("empty function spec")
    if t.startswith("conj(") and t.endswith(")"):
        return conjugate(parse_phi(t[5:-1]))
    if ":" not in t:
        raise GrammarError(f"expected <kind>:<params>, got {text!r}")
    kind, body = t.split(":", 1)
    try:
        if kind == "power":
            f = _fields(body, ("p",), ("p",))
            return Power(parse_number(f["p"]))
        if kind == "maxpow":
            f = _fields(body, ("p1", "p2"), ("p1", "p2"))
            return MaxPower(parse_number(f["p1"]), parse_number(f["p2"]))
        if kind == "pwlog":
            f = _fields(body, ("p1", "a", "p2", "b", "c1", "c2"), ("p1", "a", "p2", "b"))
            return InversePowerLog(parse_number(f["p1"]), parse_number(f["a"]), parse_number(f["p2"]),
                                   parse_number(f["b"]), parse_number(f.get("c1", "1")),
                                   parse_number(f.get("c2", "1")))
    except GrammarError:
        raise
    except ValueError as exc:
        if hasattr(exc, "constraint"):
            raise
        raise GrammarError(str(exc)) from exc
    raise GrammarError(f"unknown function kind {kind!r}; use power, maxpow, pwlog or conj(...)")


def format_phi(spec):
    """Inverse of :func:`parse_phi` for the supported variants."""
    if isinstance(spec, Power):
        return f"power:p={spec.p!r}"
    if isinstance(spec, MaxPower):
        return f"maxpow:p1={spec.p1!r},p2={spec.p2!r}"
    if isinstance(spec, InversePowerLog):
        s = f"pwlog:p1={spec.p1!r},a={spec.a!r},p2={spec.p2!r},b={spec.b!r}"
        if spec.c1 != 1.0 or spec.c2 != 1.0:
            s += f",c1={spec.c1!r},c2={spec.c2!r}"
        return s
    if isinstance(spec, Conjugate):
        return f"conj({format_phi(spec.of)})"
    return repr(spec)


def _parse_point(text, n):
    coords = [parse_number(x) for x in text.split(";")]
    if n is not None and len(coords) != n:
        raise GrammarError(f"center {text!r} has {len(coords)} coordinates, expected {n}")
    return tuple(coords)


def _parse_term(term, n):
    coef = 1.0
    if "*" in term:
        c, term = term.split("*", 1)
        coef = parse_number(c)
    if ":" not in term:
        raise GrammarError(f"expected <kind>:<params>, got {term!r}")
    kind, body = term.split(":", 1)
    if kind == "chi":
        f = _fields(body, ("c", "t"), ("t",))
        t = parse_number(f["t"])
        if not t > 0:
            raise GrammarError("radius t must be positive")
        center = _parse_point(f["c"], n) if "c" in f else None
        dim = n if n is not None else (len(center) if center else 1)
        return TestFunction.indicator(t, dim, center=center, coef=coef)
    if kind == "radpow":
        f = _fields(body, ("beta", "t", "c"), ("beta", "t"))
        t = parse_number(f["t"])
        if not t > 0:
            raise GrammarError("radius t must be positive")
        center = _parse_point(f["c"], n) if "c" in f else None
        dim = n if n is not None else (len(center) if center else 1)
        return TestFunction.radial_power(parse_number(f["beta"]), t, dim, coef=coef, center=center)
    raise GrammarError(f"unknown test-function kind {kind!r}; use chi or radpow")


def parse_function(text, n=None):
    """Parse a test-function expression in dimension ``n``."""
    t = "".join(text.split())
    if not t:
        raise GrammarError("empty test-function expression")
    total = None
    for term in t.split("+"):
        if not term:
            raise GrammarError(f"empty term in {text!r}")
        f = _parse_term(term, n)
        if total is not None and f.dim != total.dim:
            raise GrammarError("terms of different dimensions")
        total = f if total is None else total + f
    return total
