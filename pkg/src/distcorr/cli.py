"""Command-line front end.

Machine output (JSON) goes to stdout; diagnostics go to stderr.
Exit codes: 0 success, 1 computation/verification failure, 2 usage error,
3 data error.
"""
from __future__ import annotations

import argparse
import json
import secrets
import sys

import numpy as np

from .core import DEFAULT_MEMORY_BUDGET, dcor, dcov_sq
from .errors import (
    ConvergenceError,
    DataFormatError,
    DataQualityError,
    DimensionMismatchError,
    DistcorrError,
)
from .inference import SCENARIOS, permutation_test, power_simulation
from .oracles import QuadratureSpec, dcov_sq_oracle_sums, dcov_sq_via_integral
from .samples import as_sample
from .screening import (
    OutlierRule,
    ScreenConfig,
    emit_plot_data,
    flag_outliers,
    load_dataset,
    pairwise_screen,
)
from .singular import SingularParams, c_p, singular_constant, verify_singular_integral

SCHEMA_VERSION = 1


class VerificationFailure(DistcorrError):
    pass


def _emit(payload: dict) -> None:
    payload = {"schema_version": SCHEMA_VERSION, **payload}
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _load_sample(path, delimiter: str):
    ds = load_dataset(path, delimiter=delimiter, missing_policy="reject")
    if not ds.columns:
        raise DataFormatError(f"{path} has no numeric columns")
    return as_sample(np.column_stack([ds.columns[name] for name in ds.columns]))


def _resolve_seed(seed: int | None) -> int:
    if seed is not None:
        return seed
    generated = secrets.randbits(63)
    print(f"seed auto-generated: {generated}", file=sys.stderr)
    return generated


def _quad_spec(args) -> QuadratureSpec:
    return QuadratureSpec(
        truncation_radius=args.quad_radius,
        panel_count=args.quad_panels,
        tolerance=args.quad_tolerance,
    )


def _add_quad_flags(parser):
    parser.add_argument("--quad-radius", type=float, default=200.0)
    parser.add_argument("--quad-panels", type=int, default=512)
    parser.add_argument("--quad-tolerance", type=float, default=1e-2)


def cmd_compute(args) -> int:
    x = _load_sample(args.x, args.delimiter)
    y = _load_sample(args.y, args.delimiter)
    stats = dcor(x, y, memory_budget=args.memory_budget)
    _emit(
        {
            "dcov_sq": stats.dcov_sq,
            "dvar_x": stats.dvar_x,
            "dvar_y": stats.dvar_y,
            "dcor": stats.dcor,
            "pearson": stats.pearson,
            "n": stats.n,
        }
    )
    return 0


def cmd_test(args) -> int:
    x = _load_sample(args.x, args.delimiter)
    y = _load_sample(args.y, args.delimiter)
    seed = _resolve_seed(args.seed)
    res = permutation_test(x, y, args.replicates, seed)
    _emit(
        {
            "statistic": res.statistic,
            "replicates": res.replicates,
            "exceed_count": res.exceed_count,
            "p_value": res.p_value,
            "seed": res.seed,
        }
    )
    return 0


def cmd_screen(args) -> int:
    seed = _resolve_seed(args.seed)
    dataset = load_dataset(
        args.data,
        delimiter=args.delimiter,
        group_by=args.group_by,
        columns=args.columns.split(",") if args.columns else None,
        missing_policy=args.missing_policy,
    )
    config = ScreenConfig(
        p_values=args.p_values, replicates=args.replicates, seed=seed
    )
    table = pairwise_screen(dataset, config)
    table = flag_outliers(
        table,
        OutlierRule(
            nonlinear_gap=args.nonlinear_gap,
            low_dcor_percentile=args.low_dcor_percentile,
        ),
    )
    emit_plot_data(table, args.format, args.out)
    for warning in table.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    groups = sorted({r.group for r in table.records})
    _emit(
        {
            "out": args.out,
            "groups": len(groups),
            "pairs": len(table.records),
            "flagged": sum(1 for r in table.records if r.flags),
            "dropped_rows": dataset.dropped_rows,
            "seed": seed,
        }
    )
    return 0


def cmd_power(args) -> int:
    seed = _resolve_seed(args.seed)
    report = power_simulation(
        args.scenario, args.n, args.trials, args.alpha, args.replicates, seed
    )
    _emit(
        {
            "scenario": report.scenario,
            "n": report.n,
            "trials": report.trials,
            "alpha": report.alpha,
            "replicates": report.replicates,
            "rejection_rate_dcov": report.rejection_rate_dcov,
            "rejection_rate_pearson": report.rejection_rate_pearson,
            "seed": report.seed,
        }
    )
    return 0


def cmd_verify_dcov(args) -> int:
    seed = _resolve_seed(args.seed)
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((args.n, 1))
    y = rng.standard_normal((args.n, 1))
    direct = dcov_sq(x, y)
    triple = dcov_sq_oracle_sums(x, y)
    quad = dcov_sq_via_integral(x, y, _quad_spec(args))
    ok_triple = abs(direct - triple) <= 1e-12 * max(abs(direct), 1e-30)
    ok_quad = abs(direct - quad.value) <= max(1e-2 * abs(direct), 3 * quad.error_estimate)
    _emit(
        {
            "n": args.n,
            "seed": seed,
            "dcov_sq": direct,
            "triple_sum": triple,
            "quadrature": quad.value,
            "quadrature_error": quad.error_estimate,
            "pass": ok_triple and ok_quad,
        }
    )
    if not (ok_triple and ok_quad):
        raise VerificationFailure("oracle disagreement on dcov_sq")
    return 0


def cmd_verify_singular(args) -> int:
    check = verify_singular_integral(
        SingularParams(p=1, alpha=args.alpha, x=args.x), _quad_spec(args)
    )
    denom = max(abs(check.closed_form), 1e-30)
    ok = abs(check.numeric - check.closed_form) <= max(
        1e-4 * denom, 3 * check.error_estimate
    )
    _emit(
        {
            "alpha": args.alpha,
            "x": args.x,
            "numeric": check.numeric,
            "closed_form": check.closed_form,
            "error_estimate": check.error_estimate,
            "pass": ok,
        }
    )
    if not ok:
        raise VerificationFailure("singular integral disagrees with closed form")
    return 0


def cmd_verify_constants(args) -> int:
    rows = []
    ok = True
    for p in range(1, 11):
        cp = c_p(p)
        c_alpha1 = singular_constant(p, 1.0)
        agree = abs(cp - c_alpha1) <= 1e-12 * cp
        ok = ok and agree
        rows.append({"p": p, "c_p": cp, "C_p_alpha1": c_alpha1, "pass": agree})
    _emit({"constants": rows, "pass": ok})
    if not ok:
        raise VerificationFailure("C(p, 1) does not match c_p")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="distcorr",
        description="Distance covariance/correlation statistics, testing, and screening",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="distance and Pearson statistics for one pair of samples")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--delimiter", default=",")
    p.add_argument("--memory-budget", type=int, default=DEFAULT_MEMORY_BUDGET)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("test", help="permutation test of independence")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--delimiter", default=",")
    p.add_argument("--replicates", type=int, default=999)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_test)

    p = sub.add_parser("screen", help="pairwise Pearson/dcor screen over a dataset")
    p.add_argument("--data", required=True)
    p.add_argument("--columns", default=None, help="comma-separated column names")
    p.add_argument("--group-by", default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--delimiter", default=",")
    p.add_argument("--missing-policy", choices=["reject", "drop-row", "pairwise-drop"], default="reject")
    p.add_argument("--p-values", action="store_true")
    p.add_argument("--replicates", type=int, default=199)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--nonlinear-gap", type=float, default=0.25)
    p.add_argument("--low-dcor-percentile", type=float, default=5.0)
    p.set_defaults(func=cmd_screen)

    p = sub.add_parser("power", help="power comparison: dcov vs Pearson permutation tests")
    p.add_argument("--scenario", choices=list(SCENARIOS), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--replicates", type=int, default=199)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("verify", help="re-certify the build against its oracles")
    vsub = p.add_subparsers(dest="verify_what", required=True)

    v = vsub.add_parser("dcov", help="Eq.-style estimator vs triple-sum and quadrature oracles")
    v.add_argument("--n", type=int, default=5)
    v.add_argument("--seed", type=int, default=None)
    _add_quad_flags(v)
    v.set_defaults(func=cmd_verify_dcov)

    v = vsub.add_parser("singular", help="singular integral vs closed form")
    v.add_argument("--alpha", type=float, required=True)
    v.add_argument("--x", type=float, required=True)
    _add_quad_flags(v)
    v.set_defaults(func=cmd_verify_singular)

    v = vsub.add_parser("constants", help="c_p vs C(p, 1) for p = 1..10")
    v.set_defaults(func=cmd_verify_constants)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DataFormatError, DataQualityError, DimensionMismatchError) as exc:
        print(f"error: data: {exc}", file=sys.stderr)
        return 3
    except (ConvergenceError, VerificationFailure) as exc:
        print(f"error: verification: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
