"""kdv-figures: plot the CSV data exported by the kdvlab CLI.

Pure file-to-file rendering: all numbers come from the CSVs, repeated
runs produce identical bytes.
"""

from .render import FigureSpec, SchemaError, load_figure_csv, render

__version__ = "0.1.0"

__all__ = ["FigureSpec", "SchemaError", "load_figure_csv", "render"]
