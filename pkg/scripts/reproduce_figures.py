#!/usr/bin/env python3
"""Export the CSV data behind the four standard figures into ./figures_out.

Pass --render to also rasterize them, if the kdv-figures renderer package
is installed.
"""

import argparse
import pathlib
import subprocess
import sys

from kdvlab.cli import main as kdvlab_main


def run(render: bool, out_dir: pathlib.Path) -> int:
    out_dir.mkdir(parents=True, exist_ok=True)
    for fig_id in (1, 2, 3, 4):
        csv_path = out_dir / f"figure{fig_id}.csv"
        code = kdvlab_main(["figure", "--id", str(fig_id), "--out", str(csv_path)])
        if code != 0:
            return code
        print(f"wrote {csv_path}")
        if render:
            svg_path = out_dir / f"figure{fig_id}.svg"
            proc = subprocess.run(
                ["render", "--fig", str(fig_id), "--csv", str(csv_path), "--out", str(svg_path)]
            )
            if proc.returncode != 0:
                return proc.returncode
            print(f"wrote {svg_path}")
    return 0


if __name__ == "__main__":
    parser = argparse.ArgumentParser()
    parser.add_argument("--render", action="store_true", help="also produce SVGs via kdv-figures")
    parser.add_argument("--out-dir", type=pathlib.Path, default=pathlib.Path("figures_out"))
    args = parser.parse_args()
    sys.exit(run(args.render, args.out_dir))
