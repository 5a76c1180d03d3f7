"""Figure rendering for the CLI report paths.

Each experiment that writes a CSV also renders a PNG next to it (same
stem).  Figures are presentation artifacts only; the CSV stays the
deterministic record.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_DPI = 150


def _finish(fig, path: Path) -> Path:
    fig.tight_layout()
    fig.savefig(path, dpi=_DPI)
    plt.close(fig)
    return path


def figure_path(csv_path, suffix: str = "") -> Path:
    csv_path = Path(csv_path)
    stem = csv_path.stem + (f"_{suffix}" if suffix else "")
    return csv_path.with_name(stem + ".png")


def render_nodes(node_set, path) -> Path:
    """Node scatter with the generating curve overlaid."""
    d = node_set.degrees
    t = np.linspace(0.0, np.pi, 256 * max(d.m, d.n) + 1)
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.plot(np.cos(d.n * t), np.cos(d.m * t), lw=0.6, color="0.65", zorder=1)
    coords = node_set.coords()
    classes = [node.node_class.value for node in node_set.nodes]
    for cls, color in (("vertex", "tab:red"), ("edge", "tab:orange"), ("interior", "tab:blue")):
        sel = [k for k, c in enumerate(classes) if c == cls]
        if sel:
            ax.scatter(coords[sel, 0], coords[sel, 1], s=28, color=color, label=cls, zorder=2)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title(f"node set ({d.m}, {d.n}): {len(node_set)} points")
    ax.set_aspect("equal")
    ax.legend(loc="upper right", fontsize=8)
    return _finish(fig, Path(path))


def render_rate(reports, path) -> Path:
    """Log-log error curves with their fitted slope lines."""
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for report in reports:
        sizes = np.array([max(m, n) for m, n, _ in report.records], dtype=float)
        errs = np.array([e for _, _, e in report.records])
        line = ax.loglog(sizes, errs, "o-", label=f"{report.experiment}")[0]
        lo, hi = report.fit_window
        span = sizes[lo:hi]
        anchor = errs[lo]
        ax.loglog(
            span,
            anchor * (span / span[0]) ** report.fitted_slope,
            "--",
            color=line.get_color(),
            alpha=0.6,
            label=f"slope {report.fitted_slope:+.2f}",
        )
    ax.set_xlabel("max(m, n)")
    ax.set_ylabel("weighted L_p error")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8)
    return _finish(fig, Path(path))


def render_lebesgue(rows, path) -> Path:
    """Constant and its log-product ratio against the degree."""
    ms = np.array([r[0] for r in rows], dtype=float)
    vals = np.array([r[3] for r in rows])
    ratios = np.array([r[4] for r in rows])
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(8, 3.6))
    ax1.semilogx(ms, vals, "o-")
    ax1.set_xlabel("m")
    ax1.set_ylabel("operator norm estimate")
    ax1.grid(True, which="both", alpha=0.3)
    ax2.semilogx(ms, ratios, "s-", color="tab:green")
    ax2.set_xlabel("m")
    ax2.set_ylabel("value / (log(m+1) log(n+1))")
    ax2.grid(True, which="both", alpha=0.3)
    return _finish(fig, Path(path))


def render_mz(rows, path) -> Path:
    """Ratio bands per degree pair."""
    fig, ax = plt.subplots(figsize=(6, 4))
    labels = [f"({r[0]},{r[1]})\np={r[2]}" for r in rows]
    los = np.array([r[3] for r in rows])
    his = np.array([r[4] for r in rows])
    xs = np.arange(len(rows))
    ax.vlines(xs, los, his, lw=6, color="tab:blue", alpha=0.7)
    ax.scatter(xs, los, marker="_", s=300, color="k")
    ax.scatter(xs, his, marker="_", s=300, color="k")
    ax.set_xticks(xs, labels, fontsize=8)
    ax.set_yscale("log")
    ax.set_ylabel("node norm / continuum norm")
    ax.grid(True, axis="y", which="both", alpha=0.3)
    return _finish(fig, Path(path))


def render_kernel(n: int, rows, path) -> Path:
    phis = np.array([r[0] for r in rows])
    vals = np.array([r[1] for r in rows])
    fig, ax = plt.subplots(figsize=(6, 3.6))
    ax.plot(phis, vals, lw=1.0)
    ax.axhline(0.0, color="k", lw=0.5)
    ax.set_xlabel("angle")
    ax.set_ylabel(f"kernel value (order {n})")
    ax.set_title(f"peak {3 * n} at 0")
    return _finish(fig, Path(path))


def render_interpolant_heatmap(f, ip, path, grid: int = 201) -> Path:
    """Side-by-side function / interpolant / |difference| maps."""
    from .interp import evaluate_grid

    xs = np.linspace(-1, 1, grid)
    fn = getattr(f, "eval", f)
    target = fn(xs[:, None], xs[None, :])
    approx = evaluate_grid(ip, xs, xs)
    fig, axes = plt.subplots(1, 3, figsize=(10.5, 3.4))
    extent = (-1, 1, -1, 1)
    for ax, data, title in (
        (axes[0], target, "function"),
        (axes[1], approx, "interpolant"),
        (axes[2], np.abs(target - approx), "|difference|"),
    ):
        im = ax.imshow(data.T, origin="lower", extent=extent, aspect="equal")
        ax.set_title(title, fontsize=9)
        fig.colorbar(im, ax=ax, shrink=0.8)
    d = ip.degrees
    fig.suptitle(f"degrees ({d.m}, {d.n})", fontsize=10)
    return _finish(fig, Path(path))


def log_product(m: int, n: int) -> float:
    return math.log(m + 1) * math.log(n + 1)
