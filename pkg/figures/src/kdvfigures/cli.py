"""CLI entry point: render --fig N --csv PATH --out PATH [--png]."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .render import FigureSpec, SchemaError, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render", description="render a kdvlab figure CSV into an SVG/PNG plot"
    )
    parser.add_argument("--fig", type=int, required=True, help="figure id, 1..4")
    parser.add_argument("--csv", type=Path, required=True, help="input CSV from `kdvlab figure`")
    parser.add_argument("--out", type=Path, required=True, help="output image path")
    parser.add_argument("--png", action="store_true", help="write PNG instead of SVG")
    args = parser.parse_args(argv)
    try:
        spec = FigureSpec(args.fig, args.csv, args.out, png=args.png)
        render(spec)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
