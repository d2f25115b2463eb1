"""Batch isosurface renderer: render --in a.csv b.csv c.csv --out fig.png."""

from __future__ import annotations

import argparse
import sys

from . import RenderSpec, SchemaMismatch, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="render",
        description="Render 1-3 sampled implicit-surface CSV grids to a PNG figure.")
    parser.add_argument("--in", dest="inputs", nargs="+", required=True,
                        metavar="CSV", help="1 to 3 surface grid CSV files")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--isolevel", type=float, default=0.0)
    parser.add_argument("--elev", type=float, default=18.0, help="view elevation")
    parser.add_argument("--azim", type=float, default=-60.0, help="view azimuth")
    parser.add_argument("--title", dest="titles", action="append", default=[],
                        help="panel title (repeat per panel)")
    parser.add_argument("--dpi", type=int, default=150)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = RenderSpec(inputs=tuple(args.inputs), output=args.out,
                          isolevel=args.isolevel, elev=args.elev, azim=args.azim,
                          titles=tuple(args.titles), dpi=args.dpi)
        render(spec)
    except (SchemaMismatch, OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
