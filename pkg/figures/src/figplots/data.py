"""CSV loading and validation for the figure renderers.

Each reader checks the header against the exact schema the simulation CLI
emits, rejects empty, ragged, or non-numeric content with the offending
column (and line) named, and returns plain numpy arrays grouped the way the
renderers want them. Fidelity-like columns must lie in [0, 1] up to a 1e-9
slack; anything else would make a misleading figure, so it is refused here
rather than clipped later.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

_RANGE_SLACK = 1e-9
_BASELINE_AGREEMENT = 1e-6


class FigureDataError(ValueError):
    """Raised when an input CSV cannot back the requested figure."""


def _read_table(path: Path, columns: tuple[str, ...]) -> np.ndarray:
    """Read a CSV with exactly `columns` as header; return floats (rows, cols)."""
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise FigureDataError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise FigureDataError(f"{path}: empty file")
    header = rows[0]
    for name in columns:
        if name not in header:
            raise FigureDataError(f"{path}: missing column {name!r}")
    for name in header:
        if name not in columns:
            raise FigureDataError(f"{path}: unexpected column {name!r}")
    if header != list(columns):
        raise FigureDataError(f"{path}: column order must be {','.join(columns)}")
    body = rows[1:]
    if not body:
        raise FigureDataError(f"{path}: no data rows")
    data = np.empty((len(body), len(columns)))
    for i, row in enumerate(body, start=2):
        if len(row) != len(columns):
            raise FigureDataError(
                f"{path}: line {i} has {len(row)} fields, expected {len(columns)}"
            )
        for j, cell in enumerate(row):
            try:
                data[i - 2, j] = float(cell)
            except ValueError:
                raise FigureDataError(
                    f"{path}: line {i}, column {columns[j]!r}: not a number: {cell!r}"
                ) from None
    if not np.all(np.isfinite(data)):
        raise FigureDataError(f"{path}: non-finite values present")
    return data


def _check_unit_range(path: Path, name: str, values: np.ndarray) -> None:
    bad = np.flatnonzero((values < -_RANGE_SLACK) | (values > 1.0 + _RANGE_SLACK))
    if bad.size:
        raise FigureDataError(
            f"{path}: column {name!r} value {values[bad[0]]:.9g} at data row "
            f"{bad[0] + 1} lies outside [0, 1]"
        )


@dataclass(frozen=True)
class ScalingCurve:
    """F(T) versus the cooling-rate multiplier s for one coupling strength."""

    kappa: float
    s: np.ndarray
    fidelity: np.ndarray

    def optimum(self) -> float:
        """s value of the fidelity maximum (first hit on ties)."""
        return float(self.s[int(np.argmax(self.fidelity))])


def read_scaling(path: str | Path) -> tuple[ScalingCurve, ...]:
    """Load a scaling-sweep CSV as one curve per kappa, kappa ascending."""
    path = Path(path)
    data = _read_table(path, ("kappa", "s", "lambda", "F_T"))
    _check_unit_range(path, "F_T", data[:, 3])
    curves = []
    for kappa in np.unique(data[:, 0]):
        rows = data[data[:, 0] == kappa]
        order = np.argsort(rows[:, 1], kind="stable")
        s = rows[order, 1]
        if len(np.unique(s)) != len(s):
            raise FigureDataError(f"{path}: duplicate s value for kappa={kappa:g}")
        curves.append(ScalingCurve(float(kappa), s, rows[order, 3]))
    return tuple(curves)


@dataclass(frozen=True)
class FidelityCurve:
    """One fidelity-vs-time trace with its analytic unprotected baseline."""

    label: str
    t: np.ndarray
    fidelity: np.ndarray
    baseline: np.ndarray


@dataclass(frozen=True)
class CurveSet:
    """Fidelity curves sharing one time grid and one baseline."""

    t: np.ndarray
    baseline: np.ndarray
    curves: tuple[FidelityCurve, ...]


def read_curves(paths: list[str | Path] | tuple[str | Path, ...]) -> CurveSet:
    """Load fidelity-curve CSVs; grids must match exactly across files."""
    if not paths:
        raise FigureDataError("no input files")
    loaded = []
    for p in paths:
        p = Path(p)
        data = _read_table(p, ("t", "fidelity", "baseline"))
        _check_unit_range(p, "fidelity", data[:, 1])
        _check_unit_range(p, "baseline", data[:, 2])
        loaded.append(FidelityCurve(p.stem, data[:, 0], data[:, 1], data[:, 2]))
    first = loaded[0]
    for other in loaded[1:]:
        if not np.array_equal(first.t, other.t):
            raise FigureDataError(
                f"time grids differ between {first.label} and {other.label}"
            )
        if np.max(np.abs(first.baseline - other.baseline)) > _BASELINE_AGREEMENT:
            raise FigureDataError(
                f"baseline columns disagree between {first.label} and "
                f"{other.label}; these curves were not run at one error rate"
            )
    return CurveSet(first.t, first.baseline, tuple(loaded))


@dataclass(frozen=True)
class SurfaceGrid:
    """F(T) on a complete (gamma, kappa) grid; fidelity[i, j] = F(gamma_i, kappa_j)."""

    gammas: np.ndarray
    kappas: np.ndarray
    fidelity: np.ndarray


def read_surface(path: str | Path) -> SurfaceGrid:
    """Load a surface CSV; the (gamma, kappa) pairs must form a full grid."""
    path = Path(path)
    data = _read_table(path, ("gamma", "kappa", "F_T"))
    _check_unit_range(path, "F_T", data[:, 2])
    gammas = np.unique(data[:, 0])
    kappas = np.unique(data[:, 1])
    grid = np.full((len(gammas), len(kappas)), np.nan)
    for g, k, f in data:
        i = int(np.searchsorted(gammas, g))
        j = int(np.searchsorted(kappas, k))
        if not np.isnan(grid[i, j]):
            raise FigureDataError(f"{path}: duplicate grid point gamma={g:g}, kappa={k:g}")
        grid[i, j] = f
    if np.isnan(grid).any():
        i, j = np.argwhere(np.isnan(grid))[0]
        raise FigureDataError(
            f"{path}: non-rectangular grid — missing gamma={gammas[i]:g}, "
            f"kappa={kappas[j]:g}"
        )
    return SurfaceGrid(gammas, kappas, grid)
