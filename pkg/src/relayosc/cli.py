"""Command-line front end.

Subcommands: ``analyze`` (assumption checks, bounds, derived periods),
``search`` (candidate-pattern search over a period range), ``sweep``
(existence grid over delay x period, CSV output), ``simulate`` (time
stepping plus cycle detection, CSV trajectory) and ``oracle`` (exhaustive
sign-vector enumeration for one period).

Exit codes: 0 on success, 2 for unusable input (bad flags or spec files),
1 for any other failure.
"""

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import lti, oscillation, simulator
from .errors import (EnumerationLimitError, InvalidSpecError, NotApplicableError,
                     RelayOscError, UndecidableError)

ZERO_TOL_RULE = "1e-9 * l1(gbar0^P)"
FP_TOL_RULE = "1e-8 * l1(g0)"


def _range_arg(text):
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'a..b', got {text!r}")
    if lo > hi:
        raise argparse.ArgumentTypeError(f"range {text!r} is not well ordered")
    return lo, hi


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive value, got {text!r}")
    return value


def _start_arg(text):
    if text == "ones":
        return text
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected 'ones' or comma-separated relay symbols, got {text!r}")


def _write_json(payload, path):
    text = json.dumps(payload, indent=2) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _add_common(parser):
    parser.add_argument("--spec", required=True, help="system spec JSON file")
    parser.add_argument("--out", default=None, help="output file (default stdout)")
    parser.add_argument("--zero-tol", type=_positive_float, default=None,
                        help=f"sign-matching tolerance (default {ZERO_TOL_RULE})")
    parser.add_argument("--fp-tol", type=_positive_float, default=None,
                        help=f"cycle-matching tolerance (default {FP_TOL_RULE})")


def cmd_analyze(args):
    spec = lti.load_spec(args.spec)
    report = lti.validate_assumption1(spec, args.horizon)
    out = {
        "spec": spec.to_dict(),
        "tolerances": {
            "zero_tol": args.zero_tol,
            "zero_tol_default": ZERO_TOL_RULE,
            "fp_tol": args.fp_tol,
            "fp_tol_default": FP_TOL_RULE,
            "horizon": args.horizon,
        },
        "assumption1": report.to_dict(),
        "convex_on_support": lti.is_convex_on_support(spec, args.horizon),
        "absence_guaranteed": oscillation.absence_guaranteed(spec, args.horizon),
    }
    if spec.delay >= 1:
        try:
            bounds = oscillation.period_bounds(spec)
            out["P_s"] = bounds.P_s
            out["period_bounds"] = bounds.to_dict()
        except UndecidableError as exc:
            out["P_s"] = None
            out["period_bounds"] = None
            out["period_bounds_error"] = str(exc)
        out["exists_period_2Pd"] = oscillation.exists_period_2Pd(spec)
        out["derived_periods"] = sorted(oscillation.derived_periods(spec.delay))
    else:
        out["P_s"] = None
        out["period_bounds"] = None
        out["exists_period_2Pd"] = None
        out["derived_periods"] = None
    _write_json(out, args.out)
    return 0


def cmd_search(args):
    spec = lti.load_spec(args.spec)
    p_min, p_max = args.p_range
    reports = oscillation.search_oscillations(
        spec, max(p_min, 2), p_max, zero_tol=args.zero_tol)
    _write_json([r.to_dict() for r in reports], args.out)
    return 0


def _sweep_cell(payload):
    spec_dict, pd, p_min, p_max, zero_tol = payload
    spec = lti.SystemSpec.from_dict(spec_dict)
    reports = oscillation.sweep(spec, [pd], p_min, p_max, zero_tol=zero_tol)
    return [r.to_dict() for r in reports]


def cmd_sweep(args):
    spec = lti.load_spec(args.spec)
    pd_lo, pd_hi = args.pd_range
    p_min, p_max = args.p_range
    p_min = max(p_min, 2)
    cells = [(spec.to_dict(), pd, p_min, p_max, args.zero_tol)
             for pd in range(pd_lo, pd_hi + 1)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            per_cell = list(pool.map(_sweep_cell, cells))
    else:
        per_cell = [_sweep_cell(cell) for cell in cells]
    rows = sorted((r["P_d"], r["P"], r["form"]) for cell in per_cell for r in cell)

    def write_rows(fh):
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["P_d", "P", "exists", "form"])
        for pd, period, form in rows:
            writer.writerow([pd, period, 1, form])

    summary = {}
    for pd in range(pd_lo, pd_hi + 1):
        periods = [p for d, p, _ in rows if d == pd]
        summary[str(pd)] = max(periods) if periods else None

    if args.out is None:
        write_rows(sys.stdout)
        json.dump({"max_period": summary}, sys.stderr, indent=2)
        sys.stderr.write("\n")
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            write_rows(fh)
        _write_json({"max_period": summary}, args.out + ".summary.json")
        json.dump({"max_period": summary}, sys.stdout, indent=2)
        sys.stdout.write("\n")
    return 0


def cmd_simulate(args):
    spec = lti.load_spec(args.spec)
    if spec.delay < 1:
        print("error: the loop has no delay, so time stepping is an algebraic "
              "loop; run `analyze` instead (a delay-free decreasing kernel with "
              "a positive leading sample admits no one-peaked oscillation)",
              file=sys.stderr)
        return 2
    start = [1] * spec.delay if args.start == "ones" else args.start
    traj = simulator.simulate(spec, start, args.steps)
    if args.p_max is not None:
        p_max = args.p_max
    else:
        try:
            p_max = oscillation.period_bounds(spec).effective_upper
        except (NotApplicableError, UndecidableError):
            p_max = 4 * spec.delay + 2
    found = simulator.detect_period(traj, p_max, tol=args.fp_tol)

    if args.out is None:
        simulator.trajectory_to_csv(traj, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            simulator.trajectory_to_csv(traj, fh)
    if found is None:
        print(f"period=none (no cycle with P <= {p_max} within {args.steps} steps)")
    else:
        print(f"period={found[0]} transient={found[1]}")
    return 0


def cmd_oracle(args):
    spec = lti.load_spec(args.spec)
    if args.P > oscillation.ORACLE_MAX_P:
        print(f"error: refusing P = {args.P}: the oracle enumerates 3^P sign "
              f"vectors and is capped at P <= {oscillation.ORACLE_MAX_P}",
              file=sys.stderr)
        return 2
    profile = lti.periodic_summation(spec, args.P)
    zero_tol = args.zero_tol
    if zero_tol is None:
        zero_tol = oscillation.default_zero_tol(profile)
    try:
        pairs = oscillation.brute_force_fixed_points(spec, args.P, zero_tol=zero_tol)
    except EnumerationLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    from .variation import satisfies_assumption2

    payload = {
        "P": args.P,
        "P_d": spec.delay,
        "zero_tol": zero_tol,
        "fixed_points": [
            {
                "pattern": [int(x) for x in s],
                "u": [float(x) for x in u],
                "assumption2": bool(satisfies_assumption2(u)),
            }
            for s, u in pairs
        ],
    }
    _write_json(payload, args.out)
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="relayosc",
        description="Self-oscillation analysis for discrete-time relay feedback loops")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="assumption checks, bounds, derived periods")
    _add_common(p)
    p.add_argument("--horizon", type=_positive_int, default=lti.DEFAULT_HORIZON)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("search", help="candidate-pattern fixed-point search")
    _add_common(p)
    p.add_argument("--p-range", type=_range_arg, default=(2, 24),
                   help="periods to test, inclusive (default 2..24)")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("sweep", help="existence grid over delay x period (CSV)")
    _add_common(p)
    p.add_argument("--pd-range", type=_range_arg, required=True)
    p.add_argument("--p-range", type=_range_arg, required=True)
    p.add_argument("--jobs", type=_positive_int, default=1,
                   help="worker processes for sweep cells (default 1)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("simulate", help="time stepping plus cycle detection")
    _add_common(p)
    p.add_argument("--steps", type=_positive_int, default=500,
                   help="number of simulated steps (default 500)")
    p.add_argument("--start", type=_start_arg, default="ones",
                   help="relay-history prefix: 'ones' or e.g. '1,-1,1'")
    p.add_argument("--p-max", type=_positive_int, default=None,
                   help="largest period to detect (default: period bound)")
    p.add_argument("--seed", type=int, default=None, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("oracle", help="exhaustive sign-vector oracle for one period")
    _add_common(p)
    p.add_argument("--P", type=_positive_int, required=True,
                   help=f"period to enumerate (P <= {oscillation.ORACLE_MAX_P})")
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    try:
        return args.func(args)
    except (InvalidSpecError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (RelayOscError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
