"""Figure rendering for audit reports.

Writes PNG files next to the delimited output: a histogram of the D / D'
deltas per operation and a verdict summary per inequality.
"""
from __future__ import annotations

import os
from collections import Counter

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .audit import OPS, AuditReport, INEQUALITIES  # noqa: E402


def render_figures(report: AuditReport, outdir: str) -> list:
    os.makedirs(outdir, exist_ok=True)
    paths = []
    paths.append(_delta_histograms(report, os.path.join(outdir, "delta_hist.png")))
    paths.append(_verdict_summary(report, os.path.join(outdir, "verdict_summary.png")))
    return paths


def _delta_histograms(report: AuditReport, path: str) -> str:
    fig, axes = plt.subplots(1, len(OPS), figsize=(3.2 * len(OPS), 3.2), sharey=True)
    for ax, op in zip(axes, OPS):
        dd = [r.delta_D for r in report.bound_checks if r.op == op]
        dp = [r.delta_Dp for r in report.bound_checks if r.op == op and r.delta_Dp is not None]
        lo = min(dd + dp, default=0) - 1
        hi = max(dd + dp, default=0) + 1
        bins = [x - 0.5 for x in range(lo, hi + 2)]
        ax.hist([dd, dp], bins=bins, label=["ΔD", "ΔD'"], color=["#4878b0", "#e1812c"])
        ax.set_title(op, fontsize=9)
        ax.set_xlabel("after − before")
    axes[0].set_ylabel("sites")
    axes[0].legend(fontsize=8)
    fig.suptitle("Distinguishing value shifts per operation")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def _verdict_summary(report: AuditReport, path: str) -> str:
    counts = {iid: Counter() for iid in INEQUALITIES}
    for rec in report.bound_checks:
        for iid, verdict in rec.verdicts:
            counts[iid][verdict] += 1
    ids = list(INEQUALITIES)
    passes = [counts[i]["pass"] for i in ids]
    undef = [counts[i]["undefined"] for i in ids]
    fails = [counts[i]["fail"] for i in ids]
    fig, ax = plt.subplots(figsize=(10, 4))
    x = range(len(ids))
    ax.bar(x, passes, label="pass", color="#4da06a")
    ax.bar(x, undef, bottom=passes, label="undefined", color="#b0b0b0")
    ax.bar(x, fails, bottom=[p + u for p, u in zip(passes, undef)], label="fail", color="#c24444")
    ax.set_xticks(list(x))
    ax.set_xticklabels(ids, rotation=45, ha="right", fontsize=8)
    ax.set_ylabel("records")
    ax.set_title("Inequality verdicts over the corpus")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
