"""Render the four standard traveling-wave figures from their CSV data.

Layout follows the originals: solid curves are real parts, dashed curves
imaginary parts, one color per modulus-parameter value (purple for m=1,
green for m=0.25), and an inset axes compares intensities on its own
zoomed grid.  Figures 1-2 overlay the superposed and fundamental
intensities; figures 3-4 the individual/added/subtracted ones.

The renderer does no numerics beyond plotting, and its output is
deterministic: a fixed SVG hash salt and stripped date metadata make
repeated runs byte-identical.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

__all__ = ["FigureSpec", "SchemaError", "load_figure_csv", "render"]

_BASE_COLUMNS = ["m", "zeta", "re", "im", "zeta_inset"]
_INSET_COLUMNS = {
    1: ["intensity_superposed", "intensity_fundamental"],
    2: ["intensity_superposed", "intensity_fundamental"],
    3: ["intensity_individual", "intensity_added", "intensity_subtracted"],
    4: ["intensity_individual", "intensity_added", "intensity_subtracted"],
}
_CURVE_COLORS = {1.0: "purple", 0.25: "green"}
_INSET_STYLE = {
    "intensity_superposed": ("red", "superposed"),
    "intensity_fundamental": ("blue", "fundamental"),
    "intensity_individual": ("black", "individual"),
    "intensity_added": ("red", "added"),
    "intensity_subtracted": ("blue", "subtracted"),
}


class SchemaError(ValueError):
    """The CSV does not have the columns a figure needs."""


@dataclass(frozen=True)
class FigureSpec:
    fig_id: int
    csv_path: Path
    out_path: Path
    png: bool = False

    def __post_init__(self):
        if self.fig_id not in (1, 2, 3, 4):
            raise ValueError(f"figure id must be 1..4, got {self.fig_id}")


def required_columns(fig_id: int) -> list[str]:
    return _BASE_COLUMNS + _INSET_COLUMNS[fig_id]


def load_figure_csv(path: Path, fig_id: int) -> dict[str, np.ndarray]:
    """Columns as float arrays; raises SchemaError with a column diagnostic."""
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise SchemaError(f"{path}: empty file, expected columns {required_columns(fig_id)}")
            rows = [row for row in reader if row]
    except OSError as exc:
        raise SchemaError(f"{path}: {exc}") from exc

    missing = [c for c in required_columns(fig_id) if c not in header]
    if missing:
        raise SchemaError(
            f"{path}: missing columns {missing} for figure {fig_id}; found {header}"
        )
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    try:
        data = np.array([[float(v) for v in row] for row in rows])
    except ValueError as exc:
        raise SchemaError(f"{path}: non-numeric cell ({exc})") from exc
    if data.shape[1] != len(header):
        raise SchemaError(f"{path}: ragged rows")
    return {name: data[:, i] for i, name in enumerate(header)}


def render(spec: FigureSpec) -> Path:
    """Draw one figure and write an SVG (or PNG); returns the output path."""
    columns = load_figure_csv(spec.csv_path, spec.fig_id)
    part_label = "u" if spec.fig_id in (1, 2) else "v"

    plt.rcParams["svg.hashsalt"] = "kdv-figures"
    fig, ax = plt.subplots(figsize=(7.0, 4.6))

    m_values = sorted(set(columns["m"].tolist()), reverse=True)
    for m in m_values:
        sel = columns["m"] == m
        color = _CURVE_COLORS.get(m, "gray")
        zeta = columns["zeta"][sel]
        ax.plot(zeta, columns["re"][sel], color=color, linestyle="-", label=f"Re {part_label}, m={m:g}")
        ax.plot(zeta, columns["im"][sel], color=color, linestyle="--", label=f"Im {part_label}, m={m:g}")
    ax.set_xlabel(r"$\zeta$")
    ax.set_ylabel(rf"${part_label}(\zeta)$")
    ax.axhline(0.0, color="0.8", linewidth=0.6, zorder=0)
    ax.legend(loc="lower right", fontsize=8, framealpha=0.9)

    # intensity inset on its own zoomed grid, soliton case (m = max value)
    inset = fig.add_axes((0.17, 0.62, 0.26, 0.24))
    sel = columns["m"] == m_values[0]
    for name in _INSET_COLUMNS[spec.fig_id]:
        color, label = _INSET_STYLE[name]
        inset.plot(columns["zeta_inset"][sel], columns[name][sel], color=color, linewidth=1.0, label=label)
    inset.set_title("intensity", fontsize=8)
    inset.tick_params(labelsize=7)
    inset.legend(fontsize=6, framealpha=0.9)

    spec.out_path.parent.mkdir(parents=True, exist_ok=True)
    # strip volatile metadata so repeated runs are byte-identical
    if spec.png:
        fig.savefig(spec.out_path, format="png", dpi=150, metadata={"Software": None})
    else:
        fig.savefig(spec.out_path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return spec.out_path
