"""Command-line front end.

Subcommands: ``constants``, ``check``, ``norm``, ``riesz``, ``maximal``,
``verify``, ``embed``, ``witness``.  Reports go to ``--out`` (or stdout) as
JSON, or CSV where a tabular form exists.

Exit codes: 0 on success, 2 when a grammar or parameter constraint is
violated (the rule is named on stderr), 3 when ``--strict`` is set and a
divergence flag was raised.
"""

import argparse
import math
import sys

from .errors import ConstraintError, DivergenceError, GrammarError
from .geometry import Ball
from .grammar import format_phi, parse_function, parse_number, parse_phi
from .morrey import MorreyParams, central_norm, luxemburg_norm, weak_central_norm
from .potential import OperatorParams, maximal_function, riesz_potential
from .verify import report
from .verify.conditions import check_condition_1, check_condition_2, check_condition_3, default_scan_grid
from .verify.experiments import embedding_check, nontriviality_check
from .verify.ledger import constant_ledger
from .verify.presets import example_preset
from .verify.suites import SUITES, run_all, run_suite

EXIT_OK, EXIT_REJECTED, EXIT_DIVERGENT = 0, 2, 3


class _Rejected(Exception):
    """A user input problem reported with exit code 2."""


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on its own errors, which matches our convention;
    # raising keeps the diagnostic on one line and lets main() control exit
    def error(self, message):
        raise _Rejected(message)


def _num(text):
    try:
        return parse_number(text)
    except GrammarError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _point(text):
    return tuple(_num(x) for x in text.replace(";", ",").split(","))


def _common(p):
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strict", action="store_true", help="exit 3 when a divergence flag is raised")
    p.add_argument("--config", help="flat key=value file; command-line flags take precedence")


def _model(p, with_psi=True):
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--alpha", type=_num)
    p.add_argument("--lambda", dest="lam", type=_num, default=None)
    p.add_argument("--mu", type=_num, default=0.0)
    p.add_argument("--phi", help="Young function, e.g. power:p=2")
    if with_psi:
        p.add_argument("--psi", help="Young function for the target space")


def build_parser():
    parser = _Parser(prog="morrey-orlicz", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("constants", help="closed-form constant chain")
    _common(p)
    _model(p, with_psi=False)
    p.add_argument("--c0", type=_num, default=1.0, help="strong maximal bound C0")
    p.add_argument("--weak-c0", type=_num, default=None, help="weak maximal bound (defaults to --c0)")
    p.add_argument("--c1", type=_num, default=1.0)
    p.add_argument("--c2", type=_num, default=1.0)

    p = sub.add_parser("check", help="grid checks of the three integral conditions")
    _common(p)
    _model(p)
    p.add_argument("--example", type=int, choices=(1, 2, 3))
    for key in ("p", "a", "b", "p1", "p2"):
        p.add_argument(f"--{key}", type=_num)
    p.add_argument("--grid-points", type=int, default=64)
    p.add_argument("--grid-decades", type=_num, default=6.0)
    p.add_argument("--conditions", default="1,2,3")

    p = sub.add_parser("norm", help="central Morrey-Orlicz norm of a test function")
    _common(p)
    _model(p, with_psi=False)
    p.add_argument("--f", required=True, help="test function, e.g. chi:t=1")
    p.add_argument("--radius", type=_num, help="norm on the single ball B(0, radius)")
    p.add_argument("--weak", action="store_true")

    p = sub.add_parser("riesz", help="Riesz potential at a point")
    _common(p)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--alpha", type=_num, required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--x", type=_point, required=True, help="point, comma or semicolon separated")
    p.add_argument("--radius", type=_num, help="truncate the kernel to |x-y| < radius")
    p.add_argument("--method", choices=("auto", "parts", "spherical"), default="auto")

    p = sub.add_parser("maximal", help="centered maximal function at a point")
    _common(p)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--f", required=True)
    p.add_argument("--x", type=_point, required=True)

    p = sub.add_parser("verify", help="seeded property suites")
    _common(p)
    p.add_argument("--suite", choices=tuple(SUITES) + ("all",), default="all")

    p = sub.add_parser("embed", help="embedding constants between two Morrey-Orlicz spaces")
    _common(p)
    _model(p)

    p = sub.add_parser("witness", help="norms of translated unit-ball indicators")
    _common(p)
    _model(p)
    p.add_argument("--R", dest="R", default="2,4,8,16", help="comma separated radii")
    return parser


def _read_config(path):
    flags = []
    with open(path, encoding="ascii") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise GrammarError(f"{path}:{lineno}: expected key=value")
            k, v = (s.strip() for s in line.split("=", 1))
            k = k.replace("_", "-")
            if v.lower() in ("true", "yes"):
                flags.append(f"--{k}")
            elif v.lower() not in ("false", "no"):
                flags += [f"--{k}", v]
    return flags


def _expand_config(argv):
    """Insert config-file flags before the user's, so the user's win."""
    argv = list(argv)
    path = None
    for i, a in enumerate(argv):
        if a == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif a.startswith("--config="):
            path = a.split("=", 1)[1]
    if path is None or not argv:
        return argv
    return argv[:1] + _read_config(path) + argv[1:]


def _need(value, flag):
    if value is None:
        raise _Rejected(f"missing required flag {flag}")
    return value


def _phi(args, attr="phi"):
    return parse_phi(_need(getattr(args, attr), f"--{attr}"))


def _model_params(args):
    return {"n": args.n, "alpha": args.alpha, "lambda": args.lam, "mu": args.mu,
            "phi": args.phi, "psi": getattr(args, "psi", None)}


def cmd_constants(args):
    alpha = _need(args.alpha, "--alpha")
    c0w = args.c0 if args.weak_c0 is None else args.weak_c0
    led = constant_ledger(args.n, alpha, args.lam, args.mu, args.c0, c0w, args.c1, args.c2)
    d = led.as_dict()
    if args.format == "csv":
        return "name,value\n" + "".join(f"{k},{v!r}\n" for k, v in d.items()), False
    return report.dumps({"command": "constants", "params": vars_public(args), "ledger": d}), False


def vars_public(args):
    skip = {"command", "out", "format", "config", "strict"}
    return {k: v for k, v in vars(args).items() if k not in skip}


def cmd_check(args):
    if args.example is not None:
        keys = ("p", "a", "b", "p1", "p2")
        over = {k: getattr(args, k) for k in keys if getattr(args, k) is not None}
        over["n"] = args.n
        if args.alpha is not None:
            over["alpha"] = args.alpha
        if args.lam is not None:
            over["lam"] = args.lam
        pr = example_preset(args.example, over)
        phi, psi, alpha, n, lam, mu = pr["phi"], pr["psi"], pr["alpha"], pr["n"], pr["lam"], pr["mu"]
        resolved = {"example": args.example, **pr["params"], "mu": mu, "derived": pr["derived"],
                    "constraints": [{"rule": r, "ok": ok} for r, ok in pr["constraint_report"]]}
    else:
        phi, psi = _phi(args), _phi(args, "psi")
        alpha, n, lam, mu = _need(args.alpha, "--alpha"), args.n, args.lam, args.mu
        resolved = _model_params(args)
    resolved["phi"], resolved["psi"] = format_phi(phi), format_phi(psi)
    half = args.grid_decades
    grid = default_scan_grid(args.grid_points, -half, half)
    wanted = {int(c) for c in args.conditions.split(",") if c.strip()}
    if not wanted <= {1, 2, 3}:
        raise _Rejected("--conditions takes a subset of 1,2,3")
    reps = []
    if 1 in wanted:
        reps.append(check_condition_1(phi, psi, alpha, n, lam, mu, grid))
    if 2 in wanted:
        reps.append(check_condition_2(phi, psi, alpha, n, lam, mu, grid, grid))
    if 3 in wanted:
        reps.append(check_condition_3(phi, psi, alpha, n, lam, mu, grid, grid))
    divergent = any(r.divergence_flag for r in reps)
    if args.format == "csv":
        return report.margin_csv(reps), divergent
    out = {"command": "check", "params": resolved,
           "grid": {"points": args.grid_points, "log10_range": [-half, half]},
           "conditions": [report.condition_to_dict(r) for r in reps],
           "verdicts": {str(r.condition_id): ("divergent" if r.divergence_flag else
                                              "pass" if r.passed else "fail") for r in reps}}
    return report.dumps(out), divergent


def cmd_norm(args):
    phi = _phi(args)
    f = parse_function(args.f, args.n)
    prm = MorreyParams(phi, args.lam, args.n)
    if args.radius is not None:
        if args.weak:
            raise _Rejected("--weak is only available for the central norm")
        value, argmax, edge = luxemburg_norm(f, prm, Ball.centered(args.radius, args.n)), args.radius, False
        kind = "ball"
    else:
        res = (weak_central_norm if args.weak else central_norm)(f, prm)
        value, argmax, edge = res.value, res.argmax_radius, res.at_edge
        kind = "weak central" if args.weak else "central"
    out = {"command": "norm", "params": {**_model_params(args), "f": args.f, "radius": args.radius},
           "kind": kind, "value": value, "argmax_radius": argmax, "sup_at_grid_edge": edge}
    if args.format == "csv":
        return f"kind,value,argmax_radius\n{kind},{value!r},{argmax!r}\n", False
    return report.dumps(out), False


def cmd_riesz(args):
    f = parse_function(args.f, args.n)
    prm = OperatorParams(args.alpha, args.n)
    x = args.x
    if len(x) != args.n:
        raise _Rejected(f"--x has {len(x)} coordinates, expected {args.n}")
    value = riesz_potential(f, x, prm, radius=args.radius, method=args.method)
    if args.format == "csv":
        return f"value\n{value!r}\n", False
    return report.dumps({"command": "riesz", "params": {"n": args.n, "alpha": args.alpha, "f": args.f,
                                                        "x": list(x), "radius": args.radius,
                                                        "method": args.method}, "value": value}), False


def cmd_maximal(args):
    f = parse_function(args.f, args.n)
    if len(args.x) != args.n:
        raise _Rejected(f"--x has {len(args.x)} coordinates, expected {args.n}")
    value = maximal_function(f, args.x, args.n)
    if args.format == "csv":
        return f"value\n{value!r}\n", False
    return report.dumps({"command": "maximal", "params": {"n": args.n, "f": args.f, "x": list(args.x)},
                         "value": value}), False


def cmd_verify(args):
    if args.suite == "all":
        res = run_all(args.seed)
        suites = res["suites"]
    else:
        suites = [run_suite(args.suite, args.seed)]
        res = {"seed": args.seed, "suites": suites, "total_cases": suites[0]["cases"],
               "total_failed": suites[0]["failed"]}
    if args.format == "csv":
        lines = ["suite,cases,passed,failed"] + [f"{s['suite']},{s['cases']},{s['passed']},{s['failed']}"
                                                 for s in suites]
        return "\n".join(lines) + "\n", False
    return report.dumps({"command": "verify", "suite": args.suite, **res}), False


def cmd_embed(args):
    phi, psi = _phi(args), _phi(args, "psi")
    res = embedding_check(phi, psi, args.lam, args.mu, n=args.n)
    divergent = not res["holds"]
    if args.format == "csv":
        return (f"A1,A2,holds,measured\n{res['A1']!r},{res['A2']!r},{res['holds']},"
                f"{res['measured_constant']!r}\n"), divergent
    return report.dumps({"command": "embed", "params": _model_params(args), **res}), divergent


def cmd_witness(args):
    phi = _phi(args)
    R = [parse_number(v) for v in args.R.split(",")]
    psi = parse_phi(args.psi) if args.psi else None
    res = nontriviality_check(phi, args.lam, args.n, R, alpha=args.alpha, psi=psi)
    if args.format == "csv":
        rows = ["R,witness_norm,ratio"]
        ratios = res["ratio_sequence"] or [math.nan] * len(res["witness_norms"])
        rows += [f"{r!r},{w!r},{q!r}" for r, w, q in zip(R, res["witness_norms"], ratios)]
        return "\n".join(rows) + "\n", False
    return report.dumps({"command": "witness", "params": {**_model_params(args), "R": R}, **res}), False


COMMANDS = {"constants": cmd_constants, "check": cmd_check, "norm": cmd_norm, "riesz": cmd_riesz,
            "maximal": cmd_maximal, "verify": cmd_verify, "embed": cmd_embed, "witness": cmd_witness}


def run(argv=None):
    """Run the CLI and return the exit code."""
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_expand_config(argv))
        # presets supply their own lambda; elsewhere it defaults to 0
        if getattr(args, "lam", 0.0) is None and not (args.command == "check" and args.example):
            args.lam = 0.0
        text, divergent = COMMANDS[args.command](args)
    except ConstraintError as exc:
        print(f"error: constraint violated: {exc.constraint}" + (f" ({exc.detail})" if exc.detail else ""),
              file=sys.stderr)
        return EXIT_REJECTED
    except (GrammarError, _Rejected, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    except DivergenceError as exc:
        print(f"error: divergent: {exc}", file=sys.stderr)
        return EXIT_DIVERGENT
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if divergent and args.strict:
        print("divergence flag raised (--strict)", file=sys.stderr)
        return EXIT_DIVERGENT
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
