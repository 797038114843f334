"""Figure rendering for the cooling-corrected bit-flip-code simulations.

Consumes the CSV files written by the `coolqec` CLI and renders the four
standard figures (scaling sweep, fidelity curves, early-time transient,
parameter surface) as PNG + SVG pairs. This package never recomputes any
physics: the CSVs are the single source of numerical truth.
"""

from .data import (
    CurveSet,
    FidelityCurve,
    FigureDataError,
    ScalingCurve,
    SurfaceGrid,
    read_curves,
    read_scaling,
    read_surface,
)
from .render import RenderResult, plot_curves, plot_scaling, plot_surface

__all__ = [
    "CurveSet",
    "FidelityCurve",
    "FigureDataError",
    "RenderResult",
    "ScalingCurve",
    "SurfaceGrid",
    "plot_curves",
    "plot_scaling",
    "plot_surface",
    "read_curves",
    "read_scaling",
    "read_surface",
]
