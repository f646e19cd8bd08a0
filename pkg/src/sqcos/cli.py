"""Command-line interface: evaluate, tabulate, verify, emit figure data.

Subcommands
    eval N X         one derivative value with its certified error and
                     the exact reference bound n!/(2n)!
    ladder X N       all derivative orders 0..N at one point
    coeffs NMAX KMAX exact series coefficients as fractions and decimals
    verify SUITE     run a verification suite; exit 0 iff all checks pass
    figure XMIN XMAX SAMPLES   normalized-derivative data for plotting

Numeric arguments accept exact rational syntax ("355/113") as well as
decimals. Output is CSV (default) or JSON, to stdout or --out PATH.
Exit codes: 0 success / all passed, 1 verification failure, 2 usage or
convergence error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

import mpmath
from mpmath import mp, mpf

from .approx import ApproxValue
from .bounds import (verify_coeff_inequality, verify_cosh, verify_general,
                     verify_identities, verify_main,
                     verify_monotone_negative)
from .config import EvalConfig
from .errors import DomainError, NonConvergenceError
from .exact import derivative_bound, general_prefactor, series_coeff
from .ladder import build_ladder, evaluate
from .report import format_number, records_to_csv, records_to_json
from .series import as_point
from .sinc import verify_gronwall0

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_ERROR = 2


def parse_number(text: str):
    """Parse a CLI numeric argument; '/' denotes an exact rational."""
    text = text.strip()
    if "/" in text:
        return Fraction(text)
    return text


def _cfg_from_args(args) -> EvalConfig:
    return EvalConfig(precision_bits=args.precision_bits,
                      tolerance=args.tolerance,
                      switch_radius=args.switch_radius)


def _common_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--precision-bits", type=int, default=256,
                   help="working mantissa width in bits (default 256)")
    p.add_argument("--tolerance", type=str, default="1e-50",
                   help="target absolute error of evaluations (default 1e-50)")
    p.add_argument("--switch-radius", type=str, default="0.25",
                   help="|x| below which ladders use the series (default 0.25)")
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="output format (default csv)")
    p.add_argument("--out", default=None, metavar="PATH",
                   help="write output to PATH instead of stdout")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="sqcos",
        description="Certified evaluation and verification for the "
                    "derivatives of cos(sqrt(x)).")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common],
                       help="evaluate one derivative at one point")
    p.add_argument("n", type=int)
    p.add_argument("x", type=parse_number)

    p = sub.add_parser("ladder", parents=[common],
                       help="evaluate derivative orders 0..N at one point")
    p.add_argument("x", type=parse_number)
    p.add_argument("N", type=int)

    p = sub.add_parser("coeffs", parents=[common],
                       help="exact series coefficients c(n,k)")
    p.add_argument("n_max", type=int)
    p.add_argument("k_max", type=int)

    p = sub.add_parser("verify", parents=[common],
                       help="run a verification suite")
    p.add_argument("suite", choices=("main", "general", "cosh", "monotone",
                                     "coeff", "gronwall0", "identities",
                                     "all"))
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--k-max", type=int, default=60)
    p.add_argument("--x-limit", type=parse_number, default=None)
    p.add_argument("--grid-points", type=int, default=None)
    p.add_argument("--anchors", type=str, default="-1,-4,-10",
                   help="comma-separated anchor points a <= 0")
    p.add_argument("--count", type=int, default=50,
                   help="identity suite: number of sample points")
    p.add_argument("--radius", type=parse_number, default="50",
                   help="identity suite: disk radius")
    p.add_argument("--seed", type=int, default=20260810)

    p = sub.add_parser("figure", parents=[common],
                       help="normalized-derivative data over an interval")
    p.add_argument("x_min", type=parse_number)
    p.add_argument("x_max", type=parse_number)
    p.add_argument("samples", type=int)
    p.add_argument("--orders", type=str, default="0,1,2",
                   help="comma-separated derivative orders (default 0,1,2)")
    return parser


def _emit(records: list[dict], args) -> None:
    text = (records_to_json(records) if args.format == "json"
            else records_to_csv(records))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
            if not text.endswith("\n"):
                fh.write("\n")
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def cmd_eval(args) -> int:
    cfg = _cfg_from_args(args)
    value, method = evaluate(args.n, args.x, cfg)
    bound = derivative_bound(args.n)
    record = {
        "n": args.n,
        "x": format_number(as_point(args.x, cfg)),
        "value": format_number(value.value),
        "abs_error": format_number(value.abs_error),
        "method": method,
        "bound_exact": f"{bound.numerator}/{bound.denominator}",
        "bound": format_number(ApproxValue.from_fraction(
            bound, cfg.precision_bits).value),
    }
    _emit([record], args)
    return EXIT_OK


def cmd_ladder(args) -> int:
    cfg = _cfg_from_args(args)
    ladder = build_ladder(args.x, args.N, cfg)
    records = []
    for n, (value, tag) in enumerate(zip(ladder.orders, ladder.method_tags)):
        records.append({
            "n": n,
            "x": format_number(ladder.point),
            "value": format_number(value.value),
            "abs_error": format_number(value.abs_error),
            "method": tag,
        })
    _emit(records, args)
    return EXIT_OK


def cmd_coeffs(args) -> int:
    records = []
    for n in range(args.n_max + 1):
        for k in range(args.k_max + 1):
            q = series_coeff(n, k)
            records.append({
                "n": n,
                "k": k,
                "exact": f"{q.numerator}/{q.denominator}",
                "decimal": format_number(ApproxValue.from_fraction(
                    q, 128).value),
            })
    _emit(records, args)
    return EXIT_OK


def _verify_suite(suite: str, args, cfg: EvalConfig) -> list:
    reports = []
    anchors = [Fraction(tok) if "/" in tok else mpf(tok)
               for tok in args.anchors.split(",") if tok]
    if suite in ("main", "all"):
        n_max = args.n_max if args.n_max is not None else 20
        x_limit = args.x_limit if args.x_limit is not None else mpf(10) ** 4
        grid = args.grid_points if args.grid_points is not None else 10_000
        for n in range(n_max + 1):
            reports.append(verify_main(n, x_limit, grid, cfg))
    if suite in ("general", "all"):
        n_max = args.n_max if args.n_max is not None else 10
        x_limit = args.x_limit if args.x_limit is not None else mpf(50)
        grid = args.grid_points if args.grid_points is not None else 2000
        for a in anchors:
            for n in range(n_max + 1):
                for m in range(n + 1):
                    reports.append(verify_general(n, m, a, x_limit, grid, cfg))
    if suite in ("cosh", "all"):
        n_max = args.n_max if args.n_max is not None else 10
        x_limit = args.x_limit if args.x_limit is not None else mpf(50)
        grid = args.grid_points if args.grid_points is not None else 2000
        for a in anchors:
            for n in range(n_max + 1):
                reports.append(verify_cosh(n, a, x_limit, grid, cfg))
    if suite in ("monotone", "all"):
        n_max = args.n_max if args.n_max is not None else 5
        grid = args.grid_points if args.grid_points is not None else 500
        a = anchors[-1] if anchors else mpf(-25)
        for n in range(n_max + 1):
            reports.append(verify_monotone_negative(n, a, grid, cfg))
    if suite in ("coeff", "all"):
        n_max = args.n_max if args.n_max is not None else 30
        reports.append(verify_coeff_inequality(n_max, args.k_max))
    if suite in ("gronwall0", "all"):
        n_max = args.n_max if args.n_max is not None else 10
        x_limit = args.x_limit if args.x_limit is not None else mpf(50)
        grid = args.grid_points if args.grid_points is not None else 1001
        for n in range(n_max + 1):
            reports.append(verify_gronwall0(n, x_limit, grid, cfg))
    if suite in ("identities", "all"):
        reports.extend(verify_identities(args.count, args.radius,
                                         args.seed, cfg))
    return reports


def cmd_verify(args) -> int:
    cfg = _cfg_from_args(args)
    reports = _verify_suite(args.suite, args, cfg)
    _emit([r.to_record() for r in reports], args)
    failed = [r for r in reports if not r.passed]
    for r in failed:
        print(f"FAILED: {r.inequality_id} params={r.params} "
              f"min_slack={mpmath.nstr(r.min_slack, 12)}", file=sys.stderr)
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def cmd_figure(args) -> int:
    cfg = _cfg_from_args(args)
    orders = [int(tok) for tok in args.orders.split(",") if tok]
    if any(n < 0 for n in orders):
        raise DomainError("orders must be nonnegative")
    x_lo = as_point(args.x_min, cfg)
    x_hi = as_point(args.x_max, cfg)
    if x_lo > x_hi:
        raise DomainError("x_min must not exceed x_max")
    if args.samples < 1 or (args.samples < 2 and x_lo != x_hi):
        raise DomainError("need samples >= 2 (or a single degenerate point)")
    if args.samples == 1:
        xs = [x_lo]
    else:
        with mp.workprec(64):
            step = (x_hi - x_lo) / (args.samples - 1)
            xs = [x_lo + i * step for i in range(1, args.samples - 1)]
        xs = [x_lo] + xs + [x_hi]
    records = []
    for x in xs:
        record = {"x": format_number(x), "status": "ok"}
        for n in orders:
            scale = Fraction(1) / derivative_bound(n)  # (2n)!/n!
            if x == 0:
                # exact rational path: the normalized value is exactly +-1
                sign = -1 if n % 2 else 1
                record[f"d{n}"] = format_number(mpf(sign))
                record[f"d{n}_abs_error"] = format_number(mpf(0))
                continue
            try:
                value, _ = evaluate(n, x, cfg)
            except NonConvergenceError as exc:
                record["status"] = f"error: {exc}"
                record[f"d{n}"] = ""
                record[f"d{n}_abs_error"] = ""
                continue
            scaled = ApproxValue.from_fraction(
                scale, cfg.precision_bits + 40) * value
            record[f"d{n}"] = format_number(scaled.value)
            record[f"d{n}_abs_error"] = format_number(scaled.abs_error)
        records.append(record)
    _emit(records, args)
    return EXIT_OK


_DISPATCH = {
    "eval": cmd_eval,
    "ladder": cmd_ladder,
    "coeffs": cmd_coeffs,
    "verify": cmd_verify,
    "figure": cmd_figure,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except (DomainError, NonConvergenceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
