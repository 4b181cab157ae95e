"""Report figures rendered from sweep records.

Companion to the CSV output: the `report` CLI path drops these PNGs next to
the delimited file so a sweep can be eyeballed without further tooling.
"""
from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .sweep import STATUS_SOLVED, SweepRecord, offset_histogram

_FIG_KW = dict(figsize=(7.0, 4.5), dpi=150)


def _style(ax, xlabel: str, ylabel: str, title: str) -> None:
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.grid(True, alpha=0.3)


def plot_baseline_success(records: list[SweepRecord], path: Path) -> Path:
    """GRK nearest-integer success probability vs N, against the sure-success line."""
    fig, ax = plt.subplots(**_FIG_KW)
    xs = [r.N for r in records]
    ys = [r.grk_success_prob for r in records]
    ax.scatter(xs, ys, s=4, alpha=0.25, linewidths=0, label="GRK baseline")
    ax.axhline(1.0, color="tab:red", lw=1.0, label="sure-success plan")
    ax.set_xscale("log")
    _style(ax, "N = K*b", "target-block probability", "Baseline vs sure-success plans")
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_offset_distribution(records: list[SweepRecord], path: Path) -> Path:
    """How many extra global steps beyond floor(j_g) solved instances needed."""
    hist = offset_histogram(records)
    fig, ax = plt.subplots(**_FIG_KW)
    keys = sorted(hist)
    ax.bar([str(k) for k in keys], [hist[k] for k in keys], color="tab:blue")
    for i, k in enumerate(keys):
        ax.text(i, hist[k], f"{hist[k]}", ha="center", va="bottom", fontsize=9)
    _style(ax, "extra global steps (offset)", "solved instances", "Offset distribution")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_residuals(records: list[SweepRecord], path: Path) -> Path:
    """Distribution of phase-condition residuals across solved instances."""
    resid = [r.residual for r in records if r.status == STATUS_SOLVED and r.residual > 0]
    fig, ax = plt.subplots(**_FIG_KW)
    if resid:
        ax.hist([math.log10(r) for r in resid], bins=40, color="tab:green", alpha=0.8)
    _style(ax, "log10(residual)", "solved instances", "Phase-condition residuals")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def save_report_figures(records: list[SweepRecord], out_dir: Path) -> list[Path]:
    """Render every report figure into out_dir; returns the written paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    return [
        plot_baseline_success(records, out_dir / "baseline_success_vs_n.png"),
        plot_offset_distribution(records, out_dir / "offset_distribution.png"),
        plot_residuals(records, out_dir / "phase_residuals.png"),
    ]
