"""Command line interface: ``lostatsea <command> [options]``.

Angles are read in degrees. Output is JSON on stdout carrying both radians
and degrees. Exit codes: 0 success, 1 usage or domain error, 2 the search
did not converge, 3 an acceptance criterion failed.
"""
import argparse
import csv
import json
import math
import sys
import warnings

from . import acceptance, gevirtz, svg
from .disk import DiskStrategy
from .estimators import DiskTwoSegment, StripThreeSegment, StripTwoSegment
from .exceptions import DomainError, InvalidStrategyError, SingularEvaluationError
from .montecarlo import HeavyTailWarning, estimate_mean, estimate_median, sweep_median
from .objectives import (disk_expected, strip2_expected, strip2_expected_quad, strip3_expected,
                         strip3_expected_quad)
from .strip import NoPivot, Strategy2, Strategy3
from .zalgaller import build_zalgaller, evaluate_zalgaller

SCHEMA_VERSION = "1.0"
EXIT_OK, EXIT_USAGE, EXIT_NO_CONVERGENCE, EXIT_ACCEPTANCE = 0, 1, 2, 3
KINDS = ("strip2", "strip3", "disk2", "straight")


def _angle(rad):
    return {"rad": float(rad), "deg": math.degrees(rad)}


def strategy_dict(strat):
    if isinstance(strat, NoPivot):
        return {"kind": "straight"}
    if isinstance(strat, Strategy3):
        return {"kind": "strip3", "r": strat.r, "alpha": _angle(strat.alpha), "s": strat.s,
                "beta": _angle(strat.beta)}
    kind = "disk2" if isinstance(strat, DiskStrategy) else "strip2"
    return {"kind": kind, "r": strat.r, "alpha": _angle(strat.alpha)}


def _emit(payload, out):
    payload = {"schema_version": SCHEMA_VERSION, **payload}
    out.write(json.dumps(payload, indent=2, allow_nan=True) + "\n")


def _strategy(args):
    """Strategy from ``--kind/--r/--alpha/--s/--beta`` (angles in degrees)."""
    kind = args.kind
    if getattr(args, "region_pos", None):
        args.region = args.region_pos
    if kind == "straight":
        return NoPivot() if args.region != "disk" else DiskStrategy(0.0, math.pi)
    if args.r is None or args.alpha is None:
        raise DomainError(f"--r and --alpha are required for {kind}")
    alpha = math.radians(args.alpha)
    if kind == "strip2":
        return Strategy2(args.r, alpha)
    if kind == "disk2":
        return DiskStrategy(args.r, alpha)
    if args.s is None or args.beta is None:
        raise DomainError("--s and --beta are required for strip3")
    return Strategy3(args.r, alpha, args.s, math.radians(args.beta))


def _region_of(strat, args):
    if isinstance(strat, DiskStrategy):
        return "disk"
    return getattr(args, "region", None) or "strip"


def cmd_optimize(args, out):
    if args.kind == "strip2":
        est = StripTwoSegment(**_start(args, ("r", "alpha"), (1.2, 1.2)),
                              **_limit(args, 5000)).fit()
    elif args.kind == "strip3":
        est = StripThreeSegment(n_starts=args.multistart, random_state=args.seed,
                                **_limit(args, 6000)).fit()
    else:
        est = DiskTwoSegment(search="simplex" if args.simplex else "grid",
                             **_limit(args, 400)).fit()
    strat = est.strategy_
    params = [strat.r, strat.alpha] + ([strat.s, strat.beta] if args.kind == "strip3" else [])
    payload = {"command": "optimize", "scenario": args.kind, "params": params,
               "strategy": strategy_dict(strat), "value": float(est.expected_length_),
               "converged": bool(est.converged_),
               "seed": args.seed if args.kind == "strip3" else None}
    if hasattr(est, "result_"):
        payload["evaluations"] = est.result_.evaluations
        payload["start_index"] = est.result_.start_index
    else:
        payload["evaluations"] = len(est.grid_values_)
    _emit(payload, out)
    return EXIT_OK if est.converged_ else EXIT_NO_CONVERGENCE


def _limit(args, default):
    return {"max_evals": args.max_evals if args.max_evals is not None else default}


def _start(args, names, defaults):
    vals = {}
    for name, default in zip(names, defaults):
        v = getattr(args, name, None)
        vals[name] = default if v is None else (math.radians(v) if name == "alpha" else v)
    return vals


def cmd_evaluate(args, out):
    strat = _strategy(args)
    if isinstance(strat, DiskStrategy):
        val = disk_expected(strat)
    elif isinstance(strat, Strategy3):
        val = strip3_expected_quad(strat) if args.method == "quad" else strip3_expected(strat)
    elif isinstance(strat, Strategy2):
        val = strip2_expected_quad(strat) if args.method == "quad" else strip2_expected(strat)
    else:
        raise DomainError("the straight strip strategy has infinite expected length")
    _emit({"command": "evaluate", "strategy": strategy_dict(strat),
           "expected_length": val.value, "method": val.method.value,
           "error_estimate": val.est_error}, out)
    return EXIT_OK


def cmd_simulate(args, out):
    strat = _strategy(args)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", HeavyTailWarning)
        est = estimate_mean(_region_of(strat, args), strat, args.n, args.seed, radial=args.radial)
    _emit({"command": "simulate", "strategy": strategy_dict(strat), "mean": est.to_dict(),
           "warnings": [str(w.message) for w in caught]}, out)
    return EXIT_OK


def cmd_median(args, out):
    if args.sweep_r:
        return _median_sweep(args, out)
    strat = _strategy(args)
    est = estimate_median(_region_of(strat, args), strat, args.n, args.seed, radial=args.radial)
    _emit({"command": "median", "strategy": strategy_dict(strat), "median": est.to_dict(),
           "radial": args.radial}, out)
    return EXIT_OK


def _median_sweep(args, out):
    region = args.region_pos or args.region or "strip"
    if args.alpha is None:
        raise DomainError("--alpha is required with --sweep-r")
    alpha = math.radians(args.alpha)
    make = DiskStrategy if region == "disk" else Strategy2
    rows = sweep_median(region, [make(r, alpha) for r in args.sweep_r], args.n, args.seed,
                        radial=args.radial)
    for row in rows:
        row["alpha_deg"] = math.degrees(row["alpha"])
    if args.format == "csv":
        writer = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    else:
        _emit({"command": "median", "region": region, "n": args.n, "seed": args.seed,
               "radial": args.radial, "rows": rows}, out)
    return EXIT_OK


def cmd_zalgaller(args, out):
    res = evaluate_zalgaller()
    res["alpha"] = _angle(res["alpha"])
    fit3 = res["three_segment_fit"]
    fit3["alpha"], fit3["beta"] = _angle(fit3["alpha"]), _angle(fit3["beta"])
    _emit({"command": "zalgaller", **res}, out)
    return EXIT_OK


def cmd_gevirtz(args, out):
    if args.curve:
        curve = gevirtz.TurningCurve.from_file(args.curve)
    else:
        curve = gevirtz.TurningCurve.constant_curvature(args.curvature)
    frame = gevirtz.trace_curve(curve)
    payload = {"command": "gevirtz", "s_star": frame.s_star, "bound": gevirtz.BOUND,
               "arcs_disjoint": gevirtz.arcs_disjoint(frame)}
    if payload["arcs_disjoint"] and frame.lam_increasing():
        a = gevirtz.a_gamma_arc(frame, check=False)
        payload.update(a_gamma=a, slack=a - gevirtz.BOUND, holds=bool(a >= gevirtz.BOUND - 1e-9))
    if args.mc:
        payload["a_gamma_mc"] = gevirtz.a_gamma_mc(frame, args.mc, args.seed).to_dict()
    _emit(payload, out)
    return EXIT_OK


FIGURES = {
    "fig2": lambda: svg.figure2(),
    "fig4": lambda: (svg.plot_path(build_zalgaller().polyline, "Zalgaller's path"), []),
    "fig6": lambda: svg.figure6(),
}


def cmd_plot(args, out):
    if args.figure == "custom":
        strat = _strategy(args)
        if not args.state:
            raise DomainError("custom plots need at least one --state X THETA_DEG")
        states = [(x, math.radians(t)) for x, t in args.state]
        text, labels = svg.plot_realizations(_region_of(strat, args), strat, states)
    else:
        text, labels = FIGURES[args.figure]()
    with open(args.out, "w") as fh:
        fh.write(text)
    _emit({"command": "plot", "figure": args.figure, "path": args.out,
           "cases": [lab.title for lab in labels]}, out)
    return EXIT_OK


def cmd_paper_check(args, out):
    select = set(args.only) if args.only else None
    rows = acceptance.run_all(select, echo=lambda line: print(line, file=sys.stderr))
    _emit({"command": "paper-check",
           "criteria": [{"number": r.number, "name": r.name, "passed": r.passed,
                         "detail": r.detail, "seconds": r.seconds} for r in rows]}, out)
    return EXIT_OK if all(r.passed for r in rows) else EXIT_ACCEPTANCE


def _add_strategy_args(p, default_kind="strip2"):
    p.add_argument("--kind", choices=KINDS, default=default_kind)
    p.add_argument("--region", choices=("strip", "disk"), default=None,
                   help="region for --kind straight (default strip)")
    p.add_argument("--r", type=float)
    p.add_argument("--alpha", type=float, help="pivot angle in degrees")
    p.add_argument("--s", type=float)
    p.add_argument("--beta", type=float, help="second pivot angle in degrees")


def build_parser():
    parser = argparse.ArgumentParser(prog="lostatsea", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("optimize", help="search for the best strategy")
    p.add_argument("kind", choices=("strip2", "strip3", "disk2"))
    p.add_argument("--r", type=float, help="start value (strip2)")
    p.add_argument("--alpha", type=float, help="start value in degrees (strip2)")
    p.add_argument("--multistart", type=int, default=32)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--max-evals", type=int, help="objective evaluations allowed per search")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--grid", action="store_true", help="disk2: score a fixed grid (default)")
    g.add_argument("--simplex", action="store_true", help="disk2: simplex search instead of grid")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("evaluate", help="expected escape length of one strategy")
    _add_strategy_args(p)
    p.add_argument("--method", choices=("exact", "quad"), default="exact")
    p.set_defaults(func=cmd_evaluate)

    for name, func, n in (("simulate", cmd_simulate, 1_000_000), ("median", cmd_median, 1_000_000)):
        p = sub.add_parser(name, help=f"Monte Carlo {'mean' if name == 'simulate' else 'median'}")
        _add_strategy_args(p, "straight" if name == "median" else "strip2")
        p.add_argument("region_pos", nargs="?", choices=("strip", "disk"), metavar="REGION",
                       help="strip or disk (same as --region)")
        p.add_argument("--strategy", dest="kind", choices=KINDS, default=argparse.SUPPRESS,
                       help="alias of --kind")
        p.add_argument("--n", type=int, default=n)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--radial", choices=("area", "uniform"), default="area")
        if name == "median":
            p.add_argument("--sweep-r", type=float, nargs="+", metavar="R",
                           help="median for each first-leg length R at fixed --alpha")
            p.add_argument("--format", choices=("json", "csv"), default="json")
        p.set_defaults(func=func)

    p = sub.add_parser("zalgaller", help="fit and score Zalgaller's path")
    p.set_defaults(func=cmd_zalgaller)

    p = sub.add_parser("gevirtz", help="arc-formula lower bound for a turning curve")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--curve", help="file of 's phi' knot pairs")
    g.add_argument("--curvature", type=float, default=0.0)
    p.add_argument("--mc", type=int, default=0, help="also run a Monte Carlo check with n samples")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gevirtz)

    p = sub.add_parser("plot", help="write an SVG figure")
    p.add_argument("figure", choices=("fig2", "fig4", "fig6", "custom"))
    p.add_argument("--out", required=True)
    _add_strategy_args(p)
    p.add_argument("--state", nargs=2, type=float, action="append", metavar=("X", "THETA_DEG"))
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("paper-check", help="run the reproduction criteria")
    p.add_argument("--only", type=int, nargs="+", metavar="N")
    p.set_defaults(func=cmd_paper_check)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args, out)
    except (DomainError, InvalidStrategyError, SingularEvaluationError, ValueError, OSError) as exc:
        print(f"lostatsea: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
