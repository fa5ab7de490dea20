"""Command-line front end.

Exit codes: 0 success, 1 domain error, 2 usage error, 3 oracle disagreement.
Data goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import json
import sys
from typing import Sequence

from . import __version__
from . import oracle, schemes
from .model import SET_NAMES, Correlations, DomainError, Thresholds
from .sets import boundary_curve, membership

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_ORACLE = 0, 1, 2, 3

CLAIMS = ("soundness", "hull", "overlap", "classical-lp", "det-avg", "concavity", "mixing")

# The largest BPSK amplitude is sqrt(ln 2) = 0.832554...; a range end given
# to four decimals is snapped down to it instead of being rejected.
_XI_SNAP = 5e-5


class _UsageError(Exception):
    pass


def record(kind: str, payload, seed=None, timestamp: bool = False) -> dict:
    stamp = _dt.datetime.now(_dt.timezone.utc).isoformat() if timestamp else None
    return {"kind": kind, "payload": payload,
            "meta": {"tool-version": __version__, "seed": seed, "timestamp": stamp}}


def _dump(obj, out) -> None:
    out.write(json.dumps(obj, allow_nan=False) + "\n")


def _csv(out):
    return csv.writer(out, lineterminator="\n")


# ---------------------------------------------------------------------------
# Subcommands

def cmd_boundary(args, out) -> int:
    w = Thresholds(args.omega1, args.omega2)
    curve = boundary_curve(args.set, w, args.samples)
    if args.format == "csv":
        writer = _csv(out)
        writer.writerow(["e1", "e2"])
        writer.writerows(p.as_tuple() for p in curve.points)
    else:
        payload = {"set": curve.set_name, "omega1": w.omega1, "omega2": w.omega2,
                   "degenerate": curve.degenerate,
                   "points": [list(p.as_tuple()) for p in curve.points]}
        _dump(record("boundary", payload, timestamp=args.timestamp), out)
    return EXIT_OK


def _verdicts(e: Correlations, w: Thresholds) -> list[dict]:
    return [membership(name, e, w).to_dict() for name in SET_NAMES]


def cmd_check(args, out) -> int:
    e = Correlations(args.e1, args.e2)
    w = Thresholds(args.omega1, args.omega2)
    payload = {"e1": e.e1, "e2": e.e2, "omega1": w.omega1, "omega2": w.omega2,
               "verdicts": _verdicts(e, w)}
    _dump(record("verdict", payload, timestamp=args.timestamp), out)
    return EXIT_OK


def _scheme_xi(args) -> float:
    if args.omega1 is not None:
        return schemes.xi_from_omega(args.omega1)
    return 0.0 if args.xi is None else args.xi


def cmd_scheme(args, out) -> int:
    name = args.name.upper()
    if args.omega1 is not None and name != "OOK":
        raise _UsageError("--omega1 is only accepted with --name ook")
    params = schemes.SchemeParams(name, _scheme_xi(args), args.epsilon, args.eta)
    p = schemes.point(params, args.thresholds)
    payload = p.to_dict()
    payload["verdicts"] = [v.to_dict() for v in schemes.classify(p)]
    _dump(record("verdict", payload, timestamp=args.timestamp), out)
    return EXIT_OK


def cmd_scan(args, out) -> int:
    if not args.to > args.start:
        raise _UsageError(f"scan range must have positive length, got [{args.start}, {args.to}]")
    if args.steps < 2:
        raise _UsageError(f"--steps must be >= 2, got {args.steps}")
    scheme = args.scheme.upper()
    stop = args.to
    if scheme == "BPSK" and args.param == "xi" and 0 < stop - schemes.BPSK_XI_MAX <= _XI_SNAP:
        stop = schemes.BPSK_XI_MAX
    fixed = {k: getattr(args, k) for k in ("xi", "epsilon", "eta", "omega1")
             if getattr(args, k) is not None and k != args.param}
    result = schemes.scan(scheme, args.param, args.start, stop, args.steps, fixed,
                          args.thresholds)
    writer = _csv(out)
    writer.writerow([args.param, "e1", "e2", "omega1", "omega2"]
                    + [f"margin_{n}" for n in SET_NAMES])
    for row in result.rows:
        writer.writerow([row.value, row.point.e.e1, row.point.e.e2,
                         row.point.w.omega1, row.point.w.omega2]
                        + [v.margin for v in row.verdicts])
    payload = {"scheme": result.scheme, "param": result.param, "from": args.start,
               "to": stop, "steps": args.steps,
               "flips": [f.to_dict() for f in result.flips]}
    _dump(record("scan-row", payload, timestamp=args.timestamp), out)
    return EXIT_OK


_DEFAULT_TRIALS = {"soundness": 100_000, "hull": 100_000, "overlap": 100_000,
                   "concavity": 100_000, "mixing": 10_000}


def run_oracle(claim: str, w: Thresholds, trials: int | None, seed: int,
               dim: int = 2, x: int = 1, grid: int | None = None) -> oracle.OracleReport:
    n = _DEFAULT_TRIALS.get(claim) if trials is None else trials
    if claim == "soundness":
        return oracle.sample_quantum_points(w, n, seed)[1]
    if claim == "hull":
        return oracle.hull_vs_boundary(w, n, seed)
    if claim == "overlap":
        return oracle.overlap_bound_check(w.omega1, w.omega2, dim, n, seed)
    if claim == "classical-lp":
        return oracle.classical_lp_check(w, grid or 101)
    if claim == "det-avg":
        return oracle.det_avg_oracle(x, w, grid or 201)
    if claim == "concavity":
        return oracle.concavity_check(n, seed)
    if claim == "mixing":
        return oracle.mixing_closure_check(w, n, seed)
    raise _UsageError(f"unknown claim {claim!r}")


def cmd_oracle(args, out) -> int:
    w = Thresholds(args.omega1, args.omega2)
    report = run_oracle(args.claim, w, args.trials, args.seed, args.dim, args.x, args.grid)
    _dump(record("oracle-report", report.to_dict(), seed=report.seed,
                 timestamp=args.timestamp), out)
    return EXIT_OK if report.passed else EXIT_ORACLE


# ---------------------------------------------------------------------------
# Parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pmsets",
        description="Membership verdicts and boundary data for two-input "
                    "prepare-and-measure correlation sets.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--timestamp", action="store_true",
                        help="record the UTC wall-clock time in JSON metadata")
    sub = parser.add_subparsers(dest="command", required=True)

    def thresholds(p, default=None):
        req = default is None
        p.add_argument("--omega1", type=float, required=req, default=default)
        p.add_argument("--omega2", type=float, required=req, default=default)

    p = sub.add_parser("boundary", help="sample the boundary of a set")
    p.add_argument("--set", required=True, choices=SET_NAMES)
    thresholds(p)
    p.add_argument("--samples", type=int, default=360)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("check", help="classify a correlation point")
    p.add_argument("--e1", type=float, required=True)
    p.add_argument("--e2", type=float, required=True)
    thresholds(p)
    p.set_defaults(func=cmd_check)

    scheme_names = ("bpsk", "2ask", "ook")

    def scheme_params(p):
        p.add_argument("--epsilon", type=float, default=None)
        p.add_argument("--eta", type=float, default=None)
        p.add_argument("--thresholds", choices=schemes.THRESHOLD_MODES, default="non-vacuum")

    p = sub.add_parser("scheme", help="correlations and verdicts of a coherent-state scheme")
    p.add_argument("--name", required=True, type=str.lower, choices=scheme_names)
    amp = p.add_mutually_exclusive_group()
    amp.add_argument("--xi", type=float)
    amp.add_argument("--omega1", type=float, help="OOK only: derive xi from the threshold")
    scheme_params(p)
    p.set_defaults(func=cmd_scheme)

    p = sub.add_parser("scan", help="sweep one scheme parameter and locate verdict flips")
    p.add_argument("--scheme", required=True, type=str.lower, choices=scheme_names)
    p.add_argument("--param", required=True, choices=("xi", "epsilon", "eta", "omega1"))
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", type=float, required=True)
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--xi", type=float)
    p.add_argument("--omega1", type=float)
    scheme_params(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("oracle", help="run a numerical check of an analytic claim")
    p.add_argument("--claim", required=True, choices=CLAIMS)
    thresholds(p, default=0.15)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--x", type=int, choices=(1, 2), default=1)
    p.add_argument("--grid", type=int, default=None)
    p.set_defaults(func=cmd_oracle)
    return parser


def _fill_defaults(args) -> None:
    # Scheme parameters default per scheme rather than per parser.
    if getattr(args, "epsilon", 0) is None:
        args.epsilon = 0.0
    if getattr(args, "eta", 0) is None:
        args.eta = 1.0


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    # Scans keep "not given" distinguishable for the fixed-parameter dict.
    if args.command != "scan":
        _fill_defaults(args)
    try:
        if args.command == "scan" and args.param == "omega1" and args.xi is not None:
            raise _UsageError("--xi cannot be fixed while scanning omega1")
        return args.func(args, out)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"pmsets: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"pmsets: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
