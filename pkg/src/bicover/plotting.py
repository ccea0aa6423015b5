"""Figures for covers and benchmark runs, rendered to files."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Circle, Polygon  # noqa: E402


def plot_cover(P, disks, splits=(), path="cover.png", title=None):
    """Polygon outline, the two disks and the split points."""
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.add_patch(Polygon(list(P.vertices), closed=True, fill=False, lw=1.5, color="black"))
    for d, c in zip(disks, ("tab:blue", "tab:orange")):
        ax.add_patch(Circle(tuple(d.center), d.radius, alpha=0.25, color=c))
        ax.add_patch(Circle(tuple(d.center), d.radius, fill=False, lw=1, color=c))
    for p in splits:
        ax.plot([p[0]], [p[1]], "o", color="crimson", ms=5)
    xs = [v[0] for v in P.vertices] + [d.center[0] + s * d.radius for d in disks for s in (-1, 1)]
    ys = [v[1] for v in P.vertices] + [d.center[1] + s * d.radius for d in disks for s in (-1, 1)]
    pad = 0.05 * max(max(xs) - min(xs), max(ys) - min(ys))
    ax.set_xlim(min(xs) - pad, max(xs) + pad)
    ax.set_ylim(min(ys) - pad, max(ys) + pad)
    ax.set_aspect("equal")
    if title:
        ax.set_title(title)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_bench(rows, path="bench.png"):
    """Median decide time against n on log-log axes, with a linear guide."""
    by_n = {}
    for r in rows:
        by_n.setdefault(r["n"], []).append(r["decide_ms"])
    ns = sorted(by_n)
    med = [sorted(by_n[n])[len(by_n[n]) // 2] for n in ns]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.loglog(ns, med, "o-", label="median decide time")
    if ns:
        ax.loglog(ns, [med[0] * n / ns[0] for n in ns], "--", color="gray", label="linear")
    ax.set_xlabel("n")
    ax.set_ylabel("ms")
    ax.legend()
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path
