"""Figures for the verify report: the certificate grid and the pencil."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib.colors import ListedColormap  # noqa: E402

from .pencil import PointConfig  # noqa: E402
from .verifier import BOUND_ONLY, DEGREE, FLAGGED, NEF, SEMI, SYMMETRY, Report  # noqa: E402

METHOD_CODES = {NEF: 1, DEGREE: 2, SEMI: 3, SYMMETRY: 4}
METHOD_COLORS = ["#ffffff", "#4c72b0", "#55a868", "#dd8452", "#8172b2"]


def certificate_grid(report: Report, path: str | Path) -> Path:
    """Two 13x13 panels (h^0 and h^2); cell (i, j) coloured by method, crossed if not Proven."""
    fig, axes = plt.subplots(1, 2, figsize=(9, 4.4))
    cmap = ListedColormap(METHOD_COLORS)
    for ax, p in zip(axes, (0, 2)):
        grid = np.zeros((13, 13), dtype=int)
        bad = []
        for e in report.entries:
            if e.task.p != p:
                continue
            grid[e.task.i, e.task.j] = METHOD_CODES[e.method]
            if e.verdict.status in (BOUND_ONLY, FLAGGED):
                bad.append((e.task.i, e.task.j, e.verdict.status))
        ax.imshow(grid, cmap=cmap, vmin=0, vmax=len(METHOD_COLORS) - 1)
        for i, j, status in bad:
            ax.text(j, i, "B" if status == BOUND_ONLY else "x", ha="center", va="center", fontsize=8)
        ax.set_title(f"h{p}(-D_i + D_j)")
        ax.set_xlabel("j")
        ax.set_ylabel("i")
        ax.set_xticks(range(13))
        ax.set_yticks(range(13))
        ax.tick_params(labelsize=7)
    handles = [plt.Rectangle((0, 0), 1, 1, color=METHOD_COLORS[c]) for c in METHOD_CODES.values()]
    fig.legend(handles, list(METHOD_CODES), loc="lower center", ncol=4, fontsize=8, frameon=False)
    fig.tight_layout(rect=(0, 0.07, 1, 1))
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def _affine_values(cubic, xs, ys):
    out = np.zeros_like(xs)
    for (a, b, c), coeff in cubic.form.terms.items():
        out += float(coeff) * xs**a * ys**b
    return out


def pencil_plot(cfg: PointConfig, path: str | Path, extent: float = 3.0) -> Path:
    """Real affine picture (z = 1) of both cubics with the marked rational points."""
    xs, ys = np.meshgrid(np.linspace(-extent, extent, 500), np.linspace(-extent, extent, 500))
    fig, ax = plt.subplots(figsize=(5, 5))
    for cubic, color, label in zip(cfg.cubics, ("#4c72b0", "#dd8452"), ("h1", "h2")):
        ax.contour(xs, ys, _affine_values(cubic, xs, ys), levels=[0], colors=color)
        ax.plot([], [], color=color, label=label)
    for name, pt in cfg.rational_points.items():
        x, y, z = (float(c) for c in pt.coords)
        if z == 0:
            ax.annotate(f"{name} {pt} at infinity", xy=(0.02, 0.02), xycoords="axes fraction", fontsize=8)
            continue
        ax.plot(x / z, y / z, "ko", ms=4)
        ax.annotate(name, (x / z, y / z), textcoords="offset points", xytext=(4, 4), fontsize=8)
    ax.set_xlim(-extent, extent)
    ax.set_ylim(-extent, extent)
    ax.set_aspect("equal")
    ax.legend(loc="upper right", fontsize=8)
    path = Path(path)
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def write_figures(report: Report, cfg: PointConfig, outdir: str | Path) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    return [certificate_grid(report, outdir / "certificate_grid.png"),
            pencil_plot(cfg, outdir / "pencil.png")]
