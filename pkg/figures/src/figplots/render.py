"""Figure renderers: pure functions from validated tables to PNG + SVG pairs.

Styles are fixed and image metadata is pinned so repeated renders of the
same data are byte-identical within one environment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .data import CurveSet, ScalingCurve, SurfaceGrid

_STYLE = {
    "figure.figsize": (6.4, 4.2),
    "figure.dpi": 130,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "font.size": 10,
    "svg.hashsalt": "figplots",
}
_PNG_METADATA = {"Software": "figplots"}
_SVG_METADATA = {"Date": None, "Creator": "figplots"}


@dataclass(frozen=True)
class RenderResult:
    """Output paths of one render, plus per-curve optima for scaling plots."""

    png: Path
    svg: Path
    optima: dict[float, float] = field(default_factory=dict)


def _save_pair(fig, out: str | Path) -> tuple[Path, Path]:
    out = Path(out)
    if out.suffix.lower() not in ("", ".png", ".svg"):
        plt.close(fig)
        raise ValueError(
            f"output must be a .png, .svg, or extension-free path, got {out.name!r}"
        )
    base = out if out.suffix == "" else out.with_suffix("")
    png, svg = base.with_suffix(".png"), base.with_suffix(".svg")
    try:
        fig.savefig(png, metadata=_PNG_METADATA)
        fig.savefig(svg, metadata=_SVG_METADATA)
    finally:
        plt.close(fig)
    return png, svg


def plot_scaling(curves: tuple[ScalingCurve, ...], out: str | Path) -> RenderResult:
    """F(T) versus s, one curve per kappa, with each maximum marked."""
    if not curves:
        raise ValueError("no scaling curves to plot")
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        optima: dict[float, float] = {}
        for curve in curves:
            (line,) = ax.plot(
                curve.s, curve.fidelity, lw=1.4, label=rf"$\kappa$ = {curve.kappa:g}"
            )
            idx = int(np.argmax(curve.fidelity))
            s_star = float(curve.s[idx])
            optima[curve.kappa] = s_star
            ax.plot(
                s_star,
                curve.fidelity[idx],
                "o",
                ms=7,
                mfc="none",
                mec=line.get_color(),
                mew=1.6,
            )
            ax.annotate(
                f"{s_star:g}",
                (s_star, curve.fidelity[idx]),
                textcoords="offset points",
                xytext=(0, 7),
                ha="center",
                fontsize=8,
                color=line.get_color(),
            )
        ax.set_xlabel(r"cooling-rate multiplier $s$   ($\lambda = s\,\kappa$)")
        ax.set_ylabel(r"$F(T)$")
        ax.legend(loc="lower right")
        png, svg = _save_pair(fig, out)
    return RenderResult(png, svg, optima)


def plot_curves(
    curve_set: CurveSet,
    out: str | Path,
    zoom: tuple[float, float] | None = None,
) -> RenderResult:
    """Solid fidelity curves over a dashed unprotected baseline.

    `zoom` restricts the view to a time window (with the vertical range
    refit to what is visible), which is how the early-time transient figure
    is produced from the same data.
    """
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        for curve in curve_set.curves:
            ax.plot(curve_set.t, curve.fidelity, lw=1.4, label=curve.label)
        ax.plot(
            curve_set.t,
            curve_set.baseline,
            "k--",
            lw=1.2,
            label="unprotected qubit",
        )
        if zoom is not None:
            t0, t1 = float(zoom[0]), float(zoom[1])
            if not t1 > t0:
                raise ValueError(f"zoom window must have t0 < t1, got ({t0:g}, {t1:g})")
            ax.set_xlim(t0, t1)
            sel = (curve_set.t >= t0) & (curve_set.t <= t1)
            if sel.any():
                visible = [c.fidelity[sel] for c in curve_set.curves]
                visible.append(curve_set.baseline[sel])
                lo = min(v.min() for v in visible)
                hi = max(v.max() for v in visible)
                pad = 0.05 * (hi - lo) if hi > lo else 0.01
                ax.set_ylim(lo - pad, hi + pad)
        ax.set_xlabel(r"$t$")
        ax.set_ylabel("fidelity")
        ax.legend(loc="best")
        png, svg = _save_pair(fig, out)
    return RenderResult(png, svg)


def plot_surface(grid: SurfaceGrid, out: str | Path) -> RenderResult:
    """Heatmap of F(T) over the (gamma, kappa) grid."""
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        im = ax.imshow(
            grid.fidelity,
            origin="lower",
            aspect="auto",
            cmap="viridis",
            interpolation="nearest",
        )
        ax.set_xticks(range(len(grid.kappas)), [f"{k:g}" for k in grid.kappas])
        step = max(1, len(grid.gammas) // 8)
        yticks = range(0, len(grid.gammas), step)
        ax.set_yticks(yticks, [f"{grid.gammas[i]:g}" for i in yticks])
        ax.set_xlabel(r"$\kappa$")
        ax.set_ylabel(r"$\gamma$")
        fig.colorbar(im, ax=ax, label=r"$F(T)$")
        png, svg = _save_pair(fig, out)
    return RenderResult(png, svg)
