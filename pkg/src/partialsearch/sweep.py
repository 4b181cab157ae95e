"""Sweep engine and machine-readable report serialization.

Enumerates every (K, b) with K, b >= 2 and K*b <= max_n in K-major, b-minor
order, plans each instance, runs the GRK nearest-integer baseline, and
brute-force certifies instances small enough for dense simulation. Output is
a flat record per instance, serialized deterministically to CSV (floats at 17
significant digits, which round-trips float64 exactly) or JSON.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields
from typing import Iterable

from .fullsim import certify_plan
from .geometry import ideal_counts, make_geometry
from .phases import (
    IterationPlan,
    PlanFailure,
    plan_grk_baseline,
    plan_sure_success,
)
from .subspace import REM, run_plan

STATUS_SOLVED = "solved"
STATUS_KNOWN_FAILURE = "known-failure"
STATUS_UNEXPECTED_FAILURE = "unexpected-failure"

DEFAULT_CERT_CAP = 4096


@dataclass(frozen=True)
class SweepRecord:
    """One sweep row; optional fields are None when the plan failed or the
    instance was too large to certify (full_rem_prob)."""

    K: int
    b: int
    N: int
    j_l_real: float
    j_g_real: float
    j_l_hat: int | None
    j_g_hat: int | None
    offset: int | None
    theta: float | None
    phi: float | None
    residual: float | None
    subspace_rem_prob: float | None
    full_rem_prob: float | None
    grk_j_l: int
    grk_j_g: int
    grk_success_prob: float
    oracle_queries: int | None
    status: str


FIELD_NAMES = tuple(f.name for f in fields(SweepRecord))


def plan_instance(
    K: int,
    b: int,
    cert_cap: int = DEFAULT_CERT_CAP,
    solution_index: int = 0,
) -> SweepRecord:
    """Plan, baseline and (when N <= cert_cap) certify a single instance."""
    g = make_geometry(K, b)
    ideal = ideal_counts(g)
    grk_j_l, grk_j_g, grk_prob = plan_grk_baseline(g)
    plan = plan_sure_success(g)
    if isinstance(plan, PlanFailure):
        status = STATUS_KNOWN_FAILURE if (K, b) == (2, 2) else STATUS_UNEXPECTED_FAILURE
        return SweepRecord(
            K=K,
            b=b,
            N=g.N,
            j_l_real=ideal.j_l_real,
            j_g_real=ideal.j_g_real,
            j_l_hat=None,
            j_g_hat=None,
            offset=None,
            theta=None,
            phi=None,
            residual=None,
            subspace_rem_prob=None,
            full_rem_prob=None,
            grk_j_l=grk_j_l,
            grk_j_g=grk_j_g,
            grk_success_prob=grk_prob,
            oracle_queries=None,
            status=status,
        )
    final = run_plan(g, plan)
    subspace_rem_prob = float(abs(final[REM]) ** 2)
    full_rem_prob = None
    if g.N <= cert_cap:
        cert = certify_plan(g, plan, solution_index, track_trajectory=False)
        full_rem_prob = cert.probability_outside
    return SweepRecord(
        K=K,
        b=b,
        N=g.N,
        j_l_real=ideal.j_l_real,
        j_g_real=ideal.j_g_real,
        j_l_hat=plan.j_l_hat,
        j_g_hat=plan.j_g_hat,
        offset=plan.offset,
        theta=plan.phases.theta,
        phi=plan.phases.phi,
        residual=plan.phases.residual,
        subspace_rem_prob=subspace_rem_prob,
        full_rem_prob=full_rem_prob,
        grk_j_l=grk_j_l,
        grk_j_g=grk_j_g,
        grk_success_prob=grk_prob,
        oracle_queries=plan.oracle_queries,
        status=STATUS_SOLVED,
    )


def instance_grid(max_n: int) -> list[tuple[int, int]]:
    """All (K, b) with K, b >= 2 and K*b <= max_n, K-major then b-minor."""
    if max_n < 4:
        raise ValueError(f"max_n must be >= 4 (got {max_n})")
    return [(K, b) for K in range(2, max_n // 2 + 1) for b in range(2, max_n // K + 1)]


def sweep(
    max_n: int,
    cert_cap: int = DEFAULT_CERT_CAP,
    solution_index: int = 0,
) -> list[SweepRecord]:
    """Deterministic sweep over the full instance grid."""
    return [
        plan_instance(K, b, cert_cap=cert_cap, solution_index=solution_index)
        for K, b in instance_grid(max_n)
    ]


def _format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def emit_csv(records: Iterable[SweepRecord]) -> str:
    """CSV text: fixed header, LF endings, floats at 17 significant digits."""
    lines = [",".join(FIELD_NAMES)]
    for rec in records:
        lines.append(",".join(_format_value(getattr(rec, name)) for name in FIELD_NAMES))
    return "\n".join(lines) + "\n"


def emit_json(records: Iterable[SweepRecord]) -> str:
    """JSON array of flat objects (one per line), keys matching the CSV header."""
    rows = [
        json.dumps({name: getattr(rec, name) for name in FIELD_NAMES})
        for rec in records
    ]
    if not rows:
        return "[]\n"
    return "[\n" + ",\n".join(rows) + "\n]\n"


_INT_FIELDS = {"K", "b", "N", "j_l_hat", "j_g_hat", "offset", "grk_j_l", "grk_j_g", "oracle_queries"}
_FLOAT_FIELDS = {
    "j_l_real",
    "j_g_real",
    "theta",
    "phi",
    "residual",
    "subspace_rem_prob",
    "full_rem_prob",
    "grk_success_prob",
}


def _coerce(name: str, raw):
    if raw is None or raw == "":
        return None
    if name in _INT_FIELDS:
        return int(raw)
    if name in _FLOAT_FIELDS:
        return float(raw)
    return str(raw)


def parse_csv(text: str) -> list[SweepRecord]:
    """Inverse of emit_csv; numeric fields round-trip bit-exactly."""
    lines = [ln for ln in text.split("\n") if ln]
    header = tuple(lines[0].split(","))
    if header != FIELD_NAMES:
        raise ValueError(f"unexpected CSV header: {header!r}")
    records = []
    for line in lines[1:]:
        cells = line.split(",")
        records.append(
            SweepRecord(**{name: _coerce(name, cell) for name, cell in zip(header, cells)})
        )
    return records


def parse_json(text: str) -> list[SweepRecord]:
    """Inverse of emit_json."""
    return [
        SweepRecord(**{name: _coerce(name, obj.get(name)) for name in FIELD_NAMES})
        for obj in json.loads(text)
    ]


def offset_histogram(records: Iterable[SweepRecord]) -> dict[int, int]:
    """How often each extra-global-step offset was needed among solved rows."""
    hist = {0: 0, 1: 0, 2: 0}
    for rec in records:
        if rec.status == STATUS_SOLVED:
            hist[rec.offset] += 1
    return hist


def summarize(records: list[SweepRecord]) -> str:
    """Diagnostic footer: status counts, offset distribution, worst residual."""
    n = len(records)
    solved = [r for r in records if r.status == STATUS_SOLVED]
    known = [r for r in records if r.status == STATUS_KNOWN_FAILURE]
    unexpected = [r for r in records if r.status == STATUS_UNEXPECTED_FAILURE]
    hist = offset_histogram(records)
    certified = [r for r in solved if r.full_rem_prob is not None]
    lines = [
        f"instances: {n}  solved: {len(solved)}  known-failure: {len(known)}  "
        f"unexpected-failure: {len(unexpected)}",
        "offset distribution (extra global steps among solved): "
        + "  ".join(f"{k}: {v}" for k, v in sorted(hist.items())),
        f"certified (N <= cert cap): {len(certified)}",
    ]
    if solved:
        worst = max(r.residual for r in solved)
        lines.append(f"worst phase-condition residual among solved: {worst:.3e}")
    if certified:
        worst_full = max(r.full_rem_prob for r in certified)
        lines.append(f"worst certified out-of-block probability: {worst_full:.3e}")
    return "\n".join(lines)
