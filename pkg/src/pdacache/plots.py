"""Figure rendering for the report commands (headless, files only)."""

from __future__ import annotations

from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .analysis import Envelope, RatePoint, Table1Row, Table2Row


def plot_envelope(
    points: Sequence[RatePoint],
    envelope: Envelope,
    path: str,
    extra_points: Sequence[RatePoint] = (),
    title: Optional[str] = None,
) -> str:
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    xs = [float(m) for m, _ in envelope.breakpoints]
    ys = [float(r) for _, r in envelope.breakpoints]
    ax.plot(xs, ys, "-", color="tab:blue", label="memory-sharing envelope")
    ax.plot(
        [float(p.M) for p in points],
        [float(p.R) for p in points],
        "o",
        color="tab:blue",
        markersize=5,
        label="corner points",
    )
    for p in extra_points:
        ax.plot(float(p.M), float(p.R), "s", color="tab:red", markersize=7)
        ax.annotate(
            p.scheme,
            (float(p.M), float(p.R)),
            textcoords="offset points",
            xytext=(6, 6),
            fontsize=8,
        )
    ax.set_xlabel("cache memory M (files)")
    ax.set_ylabel("delivery rate R")
    ax.set_title(title or "Keyed caching rate versus memory")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_table1(rows: Sequence[Table1Row], path: str) -> str:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10.0, 4.2))
    labels = [f"{r.label}\n{r.parameter}" for r in rows]
    idx = range(len(rows))
    width = 0.38
    ax1.bar([i - width / 2 for i in idx], [float(r.R_mn) for r in rows], width, label="subset scheme")
    ax1.bar([i + width / 2 for i in idx], [float(r.R_pda) for r in rows], width, label="PDA scheme")
    ax1.set_ylabel("rate")
    ax1.set_title("Rate")
    ax2.bar([i - width / 2 for i in idx], [r.F_mn for r in rows], width, label="subset scheme")
    ax2.bar([i + width / 2 for i in idx], [r.F_pda for r in rows], width, label="PDA scheme")
    ax2.set_yscale("log")
    ax2.set_ylabel("subpacketization")
    ax2.set_title("Subpacketization")
    for ax in (ax1, ax2):
        ax.set_xticks(list(idx))
        ax.set_xticklabels(labels, fontsize=7)
        ax.legend(fontsize=8)
        ax.grid(True, axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_table2(rows: Sequence[Table2Row], path: str) -> str:
    fig, axes = plt.subplots(1, 3, figsize=(11.0, 3.8))
    labels = [f"q={r.q}, m={r.m}" for r in rows]
    idx = range(len(rows))
    width = 0.38
    panels = [
        ("memory (files)", lambda r: (float(r.memory_plain), float(r.memory_secret))),
        ("subpacketization", lambda r: (r.subpkt_plain, r.subpkt_secret)),
        ("rate", lambda r: (float(r.rate_plain), float(r.rate_secret))),
    ]
    for ax, (name, get) in zip(axes, panels):
        plain = [get(r)[0] for r in rows]
        secret = [get(r)[1] for r in rows]
        ax.bar([i - width / 2 for i in idx], plain, width, label="unkeyed")
        ax.bar([i + width / 2 for i in idx], secret, width, label="keyed")
        ax.set_title(name)
        ax.set_xticks(list(idx))
        ax.set_xticklabels(labels, fontsize=8)
        ax.grid(True, axis="y", alpha=0.3)
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
