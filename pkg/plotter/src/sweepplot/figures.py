"""Figure assembly.

One render path per plot kind, all drawing on an Agg canvas with a fixed
figure size and dpi so repeated renders of the same data are byte-identical
PNGs. Every annotation that encodes data (the y = x diagonal, sign-change
arrows) is also reported in a RenderInfo, so callers and tests can check the
drawing against the numbers without decoding pixels.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from .data import Table, load_table
from .errors import ValidationError

__all__ = ["KINDS", "PlotSpec", "RenderInfo", "render", "render_figure",
           "sign_change_abscissas"]

KINDS = ("heatmap", "curves", "dual_panel", "teff_panel", "ratio_curve")

FIGSIZE = (6.4, 4.8)
DPI = 110

# bindings each kind must resolve; z is the heatmap color, the upper
# dual-panel column, or the second curve of a two-curve panel
_REQUIRED = {
    "heatmap": ("x", "y", "z"),
    "curves": ("x", "y"),
    "dual_panel": ("x", "y", "z"),
    "teff_panel": ("x", "y", "z"),
    "ratio_curve": ("x", "y"),
}

# schema-aware fallbacks: positional for axis columns (sweep CSVs put the
# swept axes first), by name for the observable columns
_DEFAULTS = {
    "heatmap": {"z": "delta_c"},
    "curves": {"y": "c_abc"},
    "dual_panel": {"y": "delta_c", "z": "q_c"},
    "teff_panel": {"y": "t_eff_1", "z": "t_eff_2"},
    "ratio_curve": {"x": "omega", "y": "ratio"},
}


@dataclass(frozen=True)
class PlotSpec:
    """What to draw: input table, plot kind, column bindings, annotations.

    Bindings left as None fall back to schema defaults (axis columns come
    first in sweep CSVs; observable columns are found by name)."""

    input: str
    kind: str
    output: str = ""
    x: str | None = None
    y: str | None = None
    z: str | None = None
    series: str | None = None
    diagonal: bool = False
    zero_line: bool = False
    arrows: bool = False

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValidationError(
                f"unknown plot kind {self.kind!r}; expected one of {KINDS}"
            )


@dataclass(frozen=True)
class RenderInfo:
    """What was actually drawn, in data coordinates."""

    kind: str
    bindings: dict[str, str]
    arrows: tuple[float, ...] = ()
    diagonal: tuple[float, float] | None = None
    x_values: np.ndarray | None = None
    y_values: np.ndarray | None = None
    grid: np.ndarray | None = None
    series_labels: tuple[str, ...] = ()
    legend: bool = False


def sign_change_abscissas(x, y, eps: float = 0.0) -> tuple[float, ...]:
    """Abscissas where y crosses zero: grid points with |y| <= eps plus a
    linear interpolation inside every strict sign-change bracket. NaN points
    are skipped; an exact zero is reported once, not also as a bracket."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    keep = ~(np.isnan(x) | np.isnan(y))
    x, y = x[keep], y[keep]
    out = [float(xi) for xi, yi in zip(x, y) if abs(yi) <= eps]
    for i in range(len(y) - 1):
        if y[i] * y[i + 1] < 0.0 and abs(y[i]) > eps and abs(y[i + 1]) > eps:
            out.append(float(x[i] - y[i] * (x[i + 1] - x[i]) / (y[i + 1] - y[i])))
    return tuple(sorted(out))


def _resolve_bindings(spec: PlotSpec, table: Table) -> dict[str, str]:
    bindings: dict[str, str] = {}
    defaults = _DEFAULTS[spec.kind]
    for slot in _REQUIRED[spec.kind]:
        name = getattr(spec, slot)
        if name is None:
            name = defaults.get(slot)
        if name is None:  # positional fallback for axis slots
            index = {"x": 0, "y": 1}[slot]
            if index >= len(table.header):
                raise ValidationError(
                    f"cannot default binding {slot!r}: CSV has only "
                    f"{len(table.header)} columns"
                )
            name = table.header[index]
        bindings[slot] = name
    if spec.series is not None:
        bindings["series"] = spec.series
    for slot, name in bindings.items():
        if name not in table.columns:
            raise ValidationError(
                f"{slot} binding: column {name!r} not in CSV header; "
                f"have: {', '.join(table.header)}"
            )
    return bindings


def _annotate_crossings(ax, crossings, reference: float = 0.0) -> None:
    lo, hi = ax.get_ylim()
    tail = reference + 0.25 * (hi - lo)
    for cx in crossings:
        ax.annotate(
            "", xy=(cx, reference), xytext=(cx, tail),
            arrowprops=dict(arrowstyle="->", color="black", linewidth=1.2),
        )


def _heatmap(fig: Figure, table: Table, b: dict[str, str], spec: PlotSpec) -> RenderInfo:
    ax = fig.add_subplot(111)
    x = table.numeric(b["x"])
    y = table.numeric(b["y"])
    z = table.numeric(b["z"])
    placed = np.isfinite(x) & np.isfinite(y)  # rows need coordinates; z may be NaN
    x, y, z = x[placed], y[placed], z[placed]
    if x.size == 0:
        raise ValidationError(
            f"columns {b['x']!r}/{b['y']!r} have no finite coordinate pairs"
        )
    xs = np.unique(x)
    ys = np.unique(y)
    grid = np.full((ys.size, xs.size), np.nan)
    grid[np.searchsorted(ys, y), np.searchsorted(xs, x)] = z
    finite = grid[np.isfinite(grid)]
    if finite.size == 0:
        raise ValidationError(f"column {b['z']!r} has no finite values to map")
    if finite.min() < 0.0 < finite.max():  # diverging data: keep zero white
        bound = float(max(-finite.min(), finite.max()))
        mesh = ax.pcolormesh(xs, ys, grid, shading="nearest", cmap="RdBu_r",
                             vmin=-bound, vmax=bound)
    else:
        mesh = ax.pcolormesh(xs, ys, grid, shading="nearest", cmap="viridis")
    fig.colorbar(mesh, ax=ax, label=b["z"])
    diagonal = None
    if spec.diagonal:
        lo = float(max(xs.min(), ys.min()))
        hi = float(min(xs.max(), ys.max()))
        if hi > lo:
            ax.plot([lo, hi], [lo, hi], color="black", linestyle="--", linewidth=1.0)
            diagonal = (lo, hi)
    ax.set_xlabel(b["x"])
    ax.set_ylabel(b["y"])
    return RenderInfo(kind=spec.kind, bindings=b, diagonal=diagonal,
                      x_values=xs, y_values=ys, grid=grid)


def _curves(fig: Figure, table: Table, b: dict[str, str], spec: PlotSpec) -> RenderInfo:
    ax = fig.add_subplot(111)
    x = table.numeric(b["x"])
    y = table.numeric(b["y"])
    labels: list[str] = []
    if "series" in b:
        s = table.numeric(b["series"])
        for value in np.unique(s):
            mask = s == value
            label = f"{b['series']} = {value:g}"
            ax.plot(x[mask], y[mask], label=label)
            labels.append(label)
    else:
        ax.plot(x, y)
    legend = len(labels) > 1
    if legend:
        ax.legend()
    if spec.zero_line:
        ax.axhline(0.0, color="gray", linewidth=0.8)
    crossings = sign_change_abscissas(x, y) if spec.arrows else ()
    if crossings:
        _annotate_crossings(ax, crossings)
    ax.set_xlabel(b["x"])
    ax.set_ylabel(b["y"])
    return RenderInfo(kind=spec.kind, bindings=b, arrows=crossings,
                      series_labels=tuple(labels), legend=legend)


def _dual_panel(fig: Figure, table: Table, b: dict[str, str], spec: PlotSpec) -> RenderInfo:
    x = table.numeric(b["x"])
    lower = table.numeric(b["y"])
    upper = table.numeric(b["z"])
    ax_top = fig.add_subplot(211)
    ax_bot = fig.add_subplot(212, sharex=ax_top)
    ax_top.plot(x, upper)
    ax_bot.plot(x, lower)
    if spec.zero_line:
        ax_top.axhline(0.0, color="gray", linewidth=0.8)
    crossings = sign_change_abscissas(x, upper) if spec.arrows else ()
    if crossings:
        _annotate_crossings(ax_top, crossings)
        for cx in crossings:
            ax_bot.axvline(cx, color="gray", linestyle=":", linewidth=0.8)
    ax_top.set_ylabel(b["z"])
    ax_bot.set_ylabel(b["y"])
    ax_bot.set_xlabel(b["x"])
    ax_top.tick_params(labelbottom=False)
    return RenderInfo(kind=spec.kind, bindings=b, arrows=crossings)


def _teff_panel(fig: Figure, table: Table, b: dict[str, str], spec: PlotSpec) -> RenderInfo:
    ax = fig.add_subplot(111)
    x = table.numeric(b["x"])
    labels = (b["y"], b["z"])
    for name in labels:
        ax.plot(x, table.numeric(name), label=name)
    ax.legend()
    if spec.zero_line:
        ax.axhline(0.0, color="gray", linewidth=0.8)
    ax.set_xlabel(b["x"])
    ax.set_ylabel("effective temperature")
    return RenderInfo(kind=spec.kind, bindings=b, series_labels=labels, legend=True)


def _ratio_curve(fig: Figure, table: Table, b: dict[str, str], spec: PlotSpec) -> RenderInfo:
    ax = fig.add_subplot(111)
    x = table.numeric(b["x"])
    y = table.numeric(b["y"])
    ax.plot(x, y, marker="o")
    ax.axhline(1.0, color="gray", linestyle=":", linewidth=0.8)  # parity reference
    if spec.zero_line:
        ax.axhline(0.0, color="gray", linewidth=0.8)
    ax.set_xlabel(b["x"])
    ax.set_ylabel(b["y"])
    return RenderInfo(kind=spec.kind, bindings=b)


_RENDERERS = {
    "heatmap": _heatmap,
    "curves": _curves,
    "dual_panel": _dual_panel,
    "teff_panel": _teff_panel,
    "ratio_curve": _ratio_curve,
}


def render_figure(spec: PlotSpec) -> tuple[Figure, RenderInfo]:
    """Build the figure for a spec without writing it anywhere."""
    table = load_table(spec.input)
    bindings = _resolve_bindings(spec, table)
    fig = Figure(figsize=FIGSIZE, dpi=DPI, layout="constrained")
    FigureCanvasAgg(fig)
    info = _RENDERERS[spec.kind](fig, table, bindings, spec)
    return fig, info


def render(spec: PlotSpec) -> RenderInfo:
    """Render the spec and write the image to spec.output.

    Raises:
        ValidationError: no output path, unknown kind, bad bindings, empty data.
        OSError: unreadable input or unwritable output.
    """
    if not spec.output:
        raise ValidationError("no output path given")
    fig, info = render_figure(spec)
    fig.savefig(spec.output)
    return info
