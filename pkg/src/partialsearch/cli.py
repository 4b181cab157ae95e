"""Command-line interface.

Subcommands:
  sweep    enumerate all (K, b) with K*b <= --max-n, emit CSV/JSON records
  plan     plan a single instance, print a summary, optionally emit its record
  certify  plan + brute-force certify one instance at full dimension N
  report   sweep + write the CSV and the report figures into a directory

Exit codes: 0 solved / sweep clean, 2 known failure (K=2, b=2),
3 unexpected failure present, 64 usage error. All diagnostics go to stderr;
machine-readable output goes to stdout or --out.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .fullsim import certify_plan
from .geometry import make_geometry
from .phases import IterationPlan, PlanFailure, plan_sure_success
from .sweep import (
    DEFAULT_CERT_CAP,
    STATUS_KNOWN_FAILURE,
    STATUS_UNEXPECTED_FAILURE,
    SweepRecord,
    emit_csv,
    emit_json,
    plan_instance,
    summarize,
    sweep,
)

EXIT_OK = 0
EXIT_KNOWN_FAILURE = 2
EXIT_UNEXPECTED_FAILURE = 3
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    """argparse with the usage-error exit code this tool promises."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0 (got {value})")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="partialsearch", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sw = sub.add_parser("sweep", help="sweep all instances with K*b <= max-n")
    sw.add_argument("--max-n", type=int, required=True, help="largest database size N = K*b")
    sw.add_argument("--cert-cap", type=_positive_int, default=DEFAULT_CERT_CAP,
                    help="brute-force certify instances with N <= this (0 disables)")
    sw.add_argument("--format", choices=("csv", "json"), default="csv")
    sw.add_argument("--out", type=Path, default=None, help="write records here instead of stdout")
    sw.add_argument("--solution-index", type=_positive_int, default=0,
                    help="solution position used for certification")

    pl = sub.add_parser("plan", help="plan a single (K, b) instance")
    pl.add_argument("K", type=int)
    pl.add_argument("b", type=int)
    pl.add_argument("--cert-cap", type=_positive_int, default=DEFAULT_CERT_CAP)
    pl.add_argument("--format", choices=("csv", "json"), default=None,
                    help="print the machine-readable record instead of the summary")
    pl.add_argument("--out", type=Path, default=None,
                    help="also write the machine-readable record here")
    pl.add_argument("--solution-index", type=_positive_int, default=0)

    ce = sub.add_parser("certify", help="brute-force certify one instance")
    ce.add_argument("K", type=int)
    ce.add_argument("b", type=int)
    ce.add_argument("--cert-cap", type=_positive_int, default=DEFAULT_CERT_CAP,
                    help="refuse dense simulation above this N")
    ce.add_argument("--solution-index", type=_positive_int, default=None,
                    help="certify only this solution position (default: 0 and N-1)")

    rp = sub.add_parser("report", help="sweep, then write CSV plus figures")
    rp.add_argument("--max-n", type=int, required=True)
    rp.add_argument("--cert-cap", type=_positive_int, default=DEFAULT_CERT_CAP)
    rp.add_argument("--solution-index", type=_positive_int, default=0)
    rp.add_argument("--out-dir", type=Path, default=Path("report"))

    return parser


def _emit(records: list[SweepRecord], fmt: str) -> str:
    return emit_csv(records) if fmt == "csv" else emit_json(records)


def _usage_exit(command: str, message: str) -> int:
    print(f"partialsearch {command}: error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _failure_diagnostics(records: list[SweepRecord]) -> list[str]:
    """Per-offset infeasibility reasons for every unexpected failure."""
    lines = []
    for rec in records:
        if rec.status == STATUS_UNEXPECTED_FAILURE:
            failure = plan_sure_success(make_geometry(rec.K, rec.b))
            detail = failure.describe() if isinstance(failure, PlanFailure) else "?"
            lines.append(f"UNEXPECTED FAILURE (K={rec.K}, b={rec.b}, N={rec.N}): {detail}")
    return lines


def _cmd_sweep(args) -> int:
    if args.max_n < 4:
        return _usage_exit("sweep", "--max-n must be >= 4")
    records = sweep(args.max_n, cert_cap=args.cert_cap, solution_index=args.solution_index)
    payload = _emit(records, args.format)
    if args.out is not None:
        args.out.write_text(payload, encoding="utf-8")
        print(f"wrote {len(records)} records to {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(payload)
    for line in _failure_diagnostics(records):
        print(line, file=sys.stderr)
    print(summarize(records), file=sys.stderr)
    unexpected = any(r.status == STATUS_UNEXPECTED_FAILURE for r in records)
    return EXIT_UNEXPECTED_FAILURE if unexpected else EXIT_OK


def _plan_summary(record: SweepRecord) -> str:
    lines = [
        f"instance          K={record.K} b={record.b} N={record.N}",
        f"ideal counts      j_l={record.j_l_real:.6f} j_g={record.j_g_real:.6f}",
        f"grk baseline      j_l={record.grk_j_l} j_g={record.grk_j_g} "
        f"success={record.grk_success_prob:.12f}",
    ]
    if record.status == "solved":
        lines += [
            f"plan              j_l={record.j_l_hat} j_g={record.j_g_hat} "
            f"(offset {record.offset}), oracle queries {record.oracle_queries}",
            f"phases            theta={record.theta:.17g} phi={record.phi:.17g}",
            f"residual          {record.residual:.3e}",
            f"subspace rem prob {record.subspace_rem_prob:.3e}",
        ]
        if record.full_rem_prob is not None:
            lines.append(f"full rem prob     {record.full_rem_prob:.3e} (certified)")
    else:
        lines.append(f"status            {record.status}")
    return "\n".join(lines)


def _cmd_plan(args) -> int:
    record = plan_instance(args.K, args.b, cert_cap=args.cert_cap,
                           solution_index=args.solution_index)
    if args.format is None:
        print(_plan_summary(record))
    else:
        sys.stdout.write(_emit([record], args.format))
    if args.out is not None:
        fmt = args.format or "csv"
        args.out.write_text(_emit([record], fmt), encoding="utf-8")
    if record.status == STATUS_KNOWN_FAILURE:
        failure = plan_sure_success(make_geometry(args.K, args.b))
        print(f"known failure: {failure.describe()}", file=sys.stderr)
        return EXIT_KNOWN_FAILURE
    if record.status == STATUS_UNEXPECTED_FAILURE:
        failure = plan_sure_success(make_geometry(args.K, args.b))
        print(f"UNEXPECTED FAILURE: {failure.describe()}", file=sys.stderr)
        return EXIT_UNEXPECTED_FAILURE
    return EXIT_OK


def _cmd_certify(args) -> int:
    g = make_geometry(args.K, args.b)
    if args.cert_cap and g.N > args.cert_cap:
        return _usage_exit(
            "certify", f"N={g.N} exceeds --cert-cap {args.cert_cap}; dense simulation refused"
        )
    plan = plan_sure_success(g)
    if isinstance(plan, PlanFailure):
        known = (args.K, args.b) == (2, 2)
        label = "known failure" if known else "UNEXPECTED FAILURE"
        print(f"{label}: no sure-success plan; {plan.describe()}", file=sys.stderr)
        return EXIT_KNOWN_FAILURE if known else EXIT_UNEXPECTED_FAILURE
    if args.solution_index is not None:
        indices = [args.solution_index]
        if not indices[0] < g.N:
            return _usage_exit("certify", f"--solution-index must be < N={g.N}")
    else:
        indices = [0, g.N - 1]  # two different blocks: exercises symmetry
    print(
        f"plan: j_l={plan.j_l_hat} j_g={plan.j_g_hat} (offset {plan.offset}) "
        f"theta={plan.phases.theta:.17g} phi={plan.phases.phi:.17g}"
    )
    ok = True
    for idx in indices:
        cert = certify_plan(g, plan, idx)
        ok = ok and cert.probability_outside < 1e-9
        print(
            f"solution index {idx} (block {idx // g.b}): "
            f"P(outside target block)={cert.probability_outside:.3e}  "
            f"P(inside)={cert.probability_inside:.12f}  "
            f"max projection deviation={cert.trajectory_deviation:.3e}  "
            f"subspace leak={cert.subspace_leak:.3e}"
        )
    if not ok:
        print("UNEXPECTED FAILURE: certified out-of-block probability >= 1e-9",
              file=sys.stderr)
        return EXIT_UNEXPECTED_FAILURE
    return EXIT_OK


def _cmd_report(args) -> int:
    from .figures import save_report_figures

    if args.max_n < 4:
        return _usage_exit("report", "--max-n must be >= 4")
    records = sweep(args.max_n, cert_cap=args.cert_cap, solution_index=args.solution_index)
    out_dir = args.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "sweep.csv"
    csv_path.write_text(emit_csv(records), encoding="utf-8")
    paths = [csv_path] + save_report_figures(records, out_dir)
    for line in _failure_diagnostics(records):
        print(line, file=sys.stderr)
    print(summarize(records), file=sys.stderr)
    for path in paths:
        print(path)
    unexpected = any(r.status == STATUS_UNEXPECTED_FAILURE for r in records)
    return EXIT_UNEXPECTED_FAILURE if unexpected else EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("plan", "certify"):
        if args.K < 2:
            return _usage_exit(args.command, f"K must be >= 2 (got {args.K})")
        if args.b < 2:
            return _usage_exit(args.command, f"b must be >= 2 (got {args.b})")
    try:
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "plan":
            return _cmd_plan(args)
        if args.command == "certify":
            return _cmd_certify(args)
        if args.command == "report":
            return _cmd_report(args)
    except ValueError as exc:
        print(f"partialsearch: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
