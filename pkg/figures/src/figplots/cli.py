"""Command-line figure renderer.

    plot <figure_id> --in <csv ...> --out <image>

figure ids:
    scaling    one sweep CSV -> F(T) vs s, one curve per kappa, optima marked
    curves     fidelity-curve CSVs -> solid curves over the dashed baseline
    transient  same inputs as curves, zoomed to the early-time window [0, 1]
    surface    one surface CSV -> F(T) heatmap over (gamma, kappa)

Each render writes a .png and an .svg next to --out. Exit codes: 0 ok,
1 bad input data or unwritable output, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .data import FigureDataError, read_curves, read_scaling, read_surface
from .render import plot_curves, plot_scaling, plot_surface

TRANSIENT_WINDOW = (0.0, 1.0)
_SINGLE_INPUT = ("scaling", "surface")


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot",
        description=(
            "Render simulation CSV output as publication-style figures "
            "(PNG + SVG pairs)."
        ),
    )
    parser.add_argument(
        "figure_id",
        choices=("scaling", "curves", "transient", "surface"),
        help="which figure to render",
    )
    parser.add_argument(
        "--in",
        dest="inputs",
        nargs="+",
        required=True,
        type=Path,
        metavar="CSV",
        help="input CSV file(s) from the simulation CLI",
    )
    parser.add_argument(
        "--out",
        required=True,
        type=Path,
        metavar="IMAGE",
        help="output image path (.png, .svg, or extension-free)",
    )
    args = parser.parse_args(argv)

    if args.figure_id in _SINGLE_INPUT and len(args.inputs) != 1:
        parser.error(f"{args.figure_id} takes exactly one input CSV")

    try:
        if args.figure_id == "scaling":
            result = plot_scaling(read_scaling(args.inputs[0]), args.out)
            for kappa in sorted(result.optima):
                print(f"kappa={kappa:g} optimum s={result.optima[kappa]:g}")
        elif args.figure_id == "surface":
            result = plot_surface(read_surface(args.inputs[0]), args.out)
        else:
            zoom = TRANSIENT_WINDOW if args.figure_id == "transient" else None
            result = plot_curves(read_curves(args.inputs), args.out, zoom=zoom)
    except (FigureDataError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {result.png} and {result.svg}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
