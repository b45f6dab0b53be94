"""Figure rendering for simulation sweep CSVs: heatmaps with a T = T_C
diagonal, curve families, stacked current/concurrence panels with sign-change
arrows, effective-temperature panels and ratio curves."""

from .data import Table, load_table
from .errors import PlotError, ValidationError
from .figures import (
    KINDS,
    PlotSpec,
    RenderInfo,
    render,
    render_figure,
    sign_change_abscissas,
)

__version__ = "0.1.0"

__all__ = [
    "KINDS",
    "PlotError",
    "PlotSpec",
    "RenderInfo",
    "Table",
    "ValidationError",
    "load_table",
    "render",
    "render_figure",
    "sign_change_abscissas",
]
