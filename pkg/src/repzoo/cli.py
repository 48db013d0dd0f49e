"""Command-line interface.

Exit codes: 0 = all assertions hold, 1 = a mathematical assertion failed
(witness JSON on stdout), 2 = configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .groups import BudgetExceededError, DEFAULT_BUDGET, GroupScheme
from .harness import (
    AlignmentError,
    AmbiguousFitError,
    CACHE_ENV,
    ExperimentConfig,
    compare_rings,
    compute_clifford_report,
    compute_degrees,
    fit_polynomials,
    render_fit_markdown,
    run_dimirr,
    write_report,
)
from .lietype import root_datum, candidate_set, verify_containment
from .localring import RingConstructionError, RingSpec
from .polynomials import RationalPoly
from .porc import PorcFunction, porc_consolidate, porc_quotient


def _level_ring(q: int, level: int) -> RingSpec:
    p = min(f for f in range(2, q + 1) if q % f == 0)
    f, n = 0, q
    while n > 1:
        if n % p:
            raise RingConstructionError(f"{q} is not a prime power")
        n //= p
        f += 1
    return RingSpec("unramified", p, f, level)


def _cmd_dimirr(args) -> int:
    scheme = GroupScheme.parse(args.scheme)
    specs = tuple(RingSpec.parse(tok) for tok in args.ring)
    config = ExperimentConfig(
        scheme, specs, engine=args.engine, budget=args.budget, cache_dir=args.cache_dir
    )
    results = run_dimirr(config)
    print(json.dumps(results, indent=2, sort_keys=True))
    return 1 if any("error" in payload for payload in results.values()) else 0


def _cmd_fit(args) -> int:
    scheme = GroupScheme.parse(args.scheme)
    level = args.level
    sample_qs = [int(tok) for tok in args.samples.split(",")]
    samples = {}
    for q in sample_qs:
        spec = _level_ring(q, level)
        if level >= 2:
            samples[q] = compute_clifford_report(scheme, spec, args.budget)
        else:
            samples[q] = compute_degrees(scheme, spec, "chardeg", args.budget)
    holdout = None
    if args.holdout is not None:
        hq = int(args.holdout)
        holdout = (hq, compute_degrees(scheme, _level_ring(hq, level), "auto", args.budget))
    report = fit_polynomials(scheme, level, samples, holdout=holdout)
    if args.out:
        write_report(report, args.format, args.out)
    if args.format == "json":
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(render_fit_markdown(report))
    if holdout is not None and not report.holdout_match:
        print(json.dumps({"holdout_diff": [list(t) for t in report.holdout_diff]}))
        return 1
    return 0


def _cmd_compare(args) -> int:
    scheme = GroupScheme.parse(args.scheme)
    report = compare_rings(
        scheme, RingSpec.parse(args.a), RingSpec.parse(args.b), args.engine, args.budget
    )
    print(json.dumps(report.to_json(), indent=2, sort_keys=True))
    return 0 if report.equal else 1


def _cmd_lietype(args) -> int:
    scheme = GroupScheme.parse(args.family)
    datum = root_datum(scheme.family, scheme.n)
    cands = candidate_set(datum, args.twist)
    out = {"candidate_set": cands.to_json()}
    code = 0
    if args.verify:
        qs = [int(tok) for tok in args.verify.split(",")]
        report = verify_containment(scheme, args.twist, qs, args.budget)
        out["containment"] = report.to_json()
        if not report.all_contained:
            code = 1
    print(json.dumps(out, indent=2, sort_keys=True))
    return code


def _cmd_porc(args) -> int:
    if args.action != "demo":
        print(f"unknown porc action {args.action!r}", file=sys.stderr)
        return 2
    x = RationalPoly.x()
    f = PorcFunction(2, (x * x - 1,))
    g = PorcFunction(2, (x - 1,))
    quo = porc_quotient(f, g)
    family = (
        PorcFunction(2, (x, x * x)),
        PorcFunction(2, (x * x, x)),
    )
    cover = porc_consolidate(family, period_bound=2, value_count_bound=2, horizon=20)
    out = {
        "quotient": {
            "f": [c.to_json() for c in f.constituents],
            "g": [c.to_json() for c in g.constituents],
            "f_over_g": [c.to_json() for c in quo.constituents],
        },
        "consolidation": {
            "family_periods": [p.period for p in family],
            "cover": [p.to_json() for p in cover],
        },
    }
    print(json.dumps(out, indent=2, sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="repzoo",
        description="Character degree multisets of matrix groups over finite quotient rings.",
    )
    parser.add_argument(
        "--cache-dir",
        default=None,
        help=f"oracle cache directory (default: ${CACHE_ENV} or .repzoo_cache)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dimirr", help="compute degree multisets over a family of rings")
    p.add_argument("--scheme", required=True, help="e.g. GL2, SL2, U3, B2, T2")
    p.add_argument("--ring", required=True, action="append",
                   help="ring spec, e.g. unram:3,1,2 eqchar:3,1,2 eis:3,1,2,2 (repeatable)")
    p.add_argument("--engine", default="both", choices=["chardeg", "clifford", "both", "auto"])
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=_cmd_dimirr)

    p = sub.add_parser("fit", help="fit dimension/multiplicity polynomials in q")
    p.add_argument("--scheme", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--samples", required=True, help="comma-separated q values, e.g. 2,3,4")
    p.add_argument("--holdout", default=None, help="holdout q value")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--format", default="markdown", choices=["markdown", "json", "csv"])
    p.add_argument("--out", default=None, help="write the report to this path")
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("compare", help="compare degree multisets over two rings")
    p.add_argument("--scheme", required=True)
    p.add_argument("--a", required=True, help="first ring spec")
    p.add_argument("--b", required=True, help="second ring spec")
    p.add_argument("--engine", default="auto", choices=["chardeg", "clifford", "both", "auto"])
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("lietype", help="candidate degree polynomials from root data")
    p.add_argument("--family", required=True, help="GL1..GL4 or SL2..SL4")
    p.add_argument("--twist", default="split", choices=["split", "unitary"])
    p.add_argument("--verify", default=None, help="comma-separated q values to verify containment")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=_cmd_lietype)

    p = sub.add_parser("porc", help="PORC function demonstrations")
    p.add_argument("action", nargs="?", default="demo")
    p.set_defaults(func=_cmd_porc)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (AlignmentError, AmbiguousFitError) as exc:
        print(json.dumps({"assertion_failure": str(exc)}))
        return 1
    except (BudgetExceededError, RingConstructionError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(json.dumps({"assertion_failure": repr(exc.args)}))
        return 1


if __name__ == "__main__":
    sys.exit(main())
