"""Scenario configs, parameter sweeps and CSV emission.

Config files are flat ``key = value`` lines with ``#`` comments. Sweep axes
are declared as ``sweep.<axis>.start/stop/count`` with axis names from
``t`` (sets t_a = t_b), ``t_c``, ``t_a``, ``t_b``, ``delta_eps`` (moves
eps_a/eps_b symmetrically about their configured mean) and ``omega``. At most
two axes per run; the grid is walked row-major in declaration order.

Every grid point is solved twice: once without the common reservoir (column
``c_ab``) and once with the config as given (column ``c_abc``), so
``delta_c = c_abc - c_ab`` measures what attaching the common reservoir does.
"""

from __future__ import annotations

import csv
import dataclasses
import itertools
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

import numpy as np

from .errors import SolverError, ValidationError
from .lindblad import BathConfig
from .model import SystemParams
from .observables import steady_report

__all__ = [
    "AXIS_NAMES",
    "SweepAxis",
    "ScenarioConfig",
    "SweepRow",
    "RatioRow",
    "parse_config",
    "read_config",
    "format_config",
    "preset_config",
    "preset_names",
    "run_scenario",
    "run_implementation_scenario",
    "ratio_sweep",
    "dephasing_rate_from_times",
    "emit_csv",
    "emit_ratio_csv",
]

AXIS_NAMES = ("t", "t_c", "t_a", "t_b", "delta_eps", "omega")

FIXED_COLUMNS = (
    "c_ab", "c_abc", "delta_c", "q_a", "q_b", "q_c", "q_dep",
    "t_eff_1", "t_eff_2", "residual", "error",
)

_FLOAT_KEYS = (
    "eps_a", "eps_b", "omega", "t_a", "t_b", "t_c",
    "gamma_a", "gamma_b", "gamma_ca", "gamma_cb", "dephasing_gamma",
)
_BOOL_KEYS = ("common_enabled", "collective_enabled", "dephasing_enabled", "ratio_sweep")
_INT_KEYS = ("ratio_t_count",)
_STR_KEYS = ("preset", "output")
_REQUIRED_KEYS = ("eps_a", "eps_b", "omega", "gamma_a", "gamma_b", "t_a", "t_b")

_SWEEP_KEY = re.compile(r"^sweep\.([a-z_]+)\.(start|stop|count|spacing)$")


@dataclass(frozen=True)
class SweepAxis:
    """One linearly spaced sweep axis."""

    name: str
    start: float
    stop: float
    count: int
    spacing: str = "linear"

    def __post_init__(self) -> None:
        if self.name not in AXIS_NAMES:
            raise ValidationError(
                f"unknown sweep axis {self.name!r}; expected one of {AXIS_NAMES}"
            )
        if self.spacing != "linear":
            raise ValidationError(
                f"axis {self.name}: only linear spacing is supported, got {self.spacing!r}"
            )
        if self.count < 1:
            raise ValidationError(f"axis {self.name}: count must be >= 1, got {self.count}")
        if not (self.start <= self.stop):
            raise ValidationError(
                f"axis {self.name}: start must be <= stop, got [{self.start}, {self.stop}]"
            )

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class ScenarioConfig:
    """Base point in parameter space plus up to two sweep axes."""

    eps_a: float
    eps_b: float
    omega: float
    t_a: float
    t_b: float
    t_c: float = 0.0
    gamma_a: float = 1.0
    gamma_b: float = 1.0
    gamma_ca: float = 0.0
    gamma_cb: float = 0.0
    dephasing_gamma: float = 0.0
    common_enabled: bool = True
    collective_enabled: bool = True
    dephasing_enabled: bool = False
    axes: tuple[SweepAxis, ...] = ()
    output: str | None = None
    preset: str | None = None
    ratio_sweep: bool = False
    ratio_t_count: int = 24

    def __post_init__(self) -> None:
        names = [axis.name for axis in self.axes]
        if len(self.axes) > 2:
            raise ValidationError(f"at most 2 sweep axes per run, got {len(self.axes)}")
        if len(set(names)) != len(names):
            raise ValidationError(f"duplicate sweep axes: {names}")
        if "t" in names and ("t_a" in names or "t_b" in names):
            raise ValidationError("axis 't' sets t_a and t_b; do not also sweep them")
        if self.ratio_t_count < 2:
            raise ValidationError(f"ratio_t_count must be >= 2, got {self.ratio_t_count}")

    def system_params(self) -> SystemParams:
        return SystemParams(self.eps_a, self.eps_b, self.omega)

    def bath_config(self) -> BathConfig:
        return BathConfig(
            t_a=self.t_a, t_b=self.t_b, t_c=self.t_c,
            gamma_a=self.gamma_a, gamma_b=self.gamma_b,
            gamma_ca=self.gamma_ca, gamma_cb=self.gamma_cb,
            dephasing_gamma=self.dephasing_gamma,
            common_enabled=self.common_enabled,
            collective_enabled=self.collective_enabled,
            dephasing_enabled=self.dephasing_enabled,
        )

    def at_point(self, values: Sequence[float]) -> tuple[SystemParams, BathConfig]:
        """System and bath at one grid point; values align with self.axes."""
        eps_a, eps_b, omega = self.eps_a, self.eps_b, self.omega
        bath_kw = dict(
            t_a=self.t_a, t_b=self.t_b, t_c=self.t_c,
            gamma_a=self.gamma_a, gamma_b=self.gamma_b,
            gamma_ca=self.gamma_ca, gamma_cb=self.gamma_cb,
            dephasing_gamma=self.dephasing_gamma,
            common_enabled=self.common_enabled,
            collective_enabled=self.collective_enabled,
            dephasing_enabled=self.dephasing_enabled,
        )
        eps_m = 0.5 * (self.eps_a + self.eps_b)
        for axis, value in zip(self.axes, values):
            v = float(value)
            if axis.name == "t":
                bath_kw["t_a"] = v
                bath_kw["t_b"] = v
            elif axis.name == "t_c":
                bath_kw["t_c"] = v
            elif axis.name == "t_a":
                bath_kw["t_a"] = v
            elif axis.name == "t_b":
                bath_kw["t_b"] = v
            elif axis.name == "delta_eps":
                eps_a = eps_m + 0.5 * v
                eps_b = eps_m - 0.5 * v
            elif axis.name == "omega":
                omega = v
        return SystemParams(eps_a, eps_b, omega), BathConfig(**bath_kw)

    def grid(self) -> Iterable[tuple[float, ...]]:
        """Row-major walk over the axis grid (first axis outermost)."""
        if not self.axes:
            return [()]
        return itertools.product(*(axis.values() for axis in self.axes))


@dataclass(frozen=True)
class SweepRow:
    """One solved grid point. delta_c = c_abc - c_ab by construction; error
    is empty on success and carries the failure message otherwise (numeric
    fields are NaN on failed rows)."""

    axis_values: tuple[float, ...]
    c_ab: float
    c_abc: float
    delta_c: float
    q_a: float
    q_b: float
    q_c: float
    q_dep: float
    t_eff_1: float
    t_eff_2: float
    residual: float
    error: str = ""


@dataclass(frozen=True)
class RatioRow:
    """Equilibrium vs non-equilibrium concurrence maxima at one coupling."""

    omega: float
    c_eq: float
    c_neq: float
    ratio: float


def _parse_bool(key: str, value: str) -> bool:
    lowered = value.lower()
    if lowered == "true":
        return True
    if lowered == "false":
        return False
    raise ValidationError(f"{key}: expected true or false, got {value!r}")


def parse_config(text: str) -> ScenarioConfig:
    """Parse flat key=value config text into a ScenarioConfig.

    A ``preset = <name>`` line pulls in that preset's values first; explicit
    lines in the file override them."""
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ValidationError(f"line {lineno}: expected key = value, got {line!r}")
        key, value = (part.strip() for part in stripped.split("=", 1))
        if not key or not value:
            raise ValidationError(f"line {lineno}: empty key or value in {line!r}")
        if key in raw:
            raise ValidationError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = value
    if "preset" in raw:
        base = _preset_raw(raw["preset"])
        merged = dict(base)
        merged.update(raw)
        raw = merged
    return _build_config(raw)


def read_config(path: str) -> ScenarioConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


def _build_config(raw: dict[str, str]) -> ScenarioConfig:
    kwargs: dict[str, object] = {}
    sweeps: dict[str, dict[str, object]] = {}
    axis_order: list[str] = []
    for key, value in raw.items():
        if key in _FLOAT_KEYS:
            try:
                kwargs[key] = float(value)
            except ValueError as exc:
                raise ValidationError(f"{key}: not a number: {value!r}") from exc
        elif key in _BOOL_KEYS:
            kwargs[key] = _parse_bool(key, value)
        elif key in _INT_KEYS:
            try:
                kwargs[key] = int(value)
            except ValueError as exc:
                raise ValidationError(f"{key}: not an integer: {value!r}") from exc
        elif key in _STR_KEYS:
            kwargs[key] = value
        else:
            match = _SWEEP_KEY.match(key)
            if match is None:
                raise ValidationError(f"unknown config key {key!r}")
            axis, attr = match.groups()
            if axis not in AXIS_NAMES:
                raise ValidationError(
                    f"unknown sweep axis {axis!r}; expected one of {AXIS_NAMES}"
                )
            if axis not in sweeps:
                sweeps[axis] = {}
                axis_order.append(axis)
            if attr == "count":
                try:
                    sweeps[axis][attr] = int(value)
                except ValueError as exc:
                    raise ValidationError(f"{key}: not an integer: {value!r}") from exc
            elif attr == "spacing":
                sweeps[axis][attr] = value
            else:
                try:
                    sweeps[axis][attr] = float(value)
                except ValueError as exc:
                    raise ValidationError(f"{key}: not a number: {value!r}") from exc
    missing = [key for key in _REQUIRED_KEYS if key not in kwargs]
    if missing:
        raise ValidationError(f"missing required config keys: {missing}")
    axes = []
    for axis in axis_order:
        spec = sweeps[axis]
        lacking = [attr for attr in ("start", "stop", "count") if attr not in spec]
        if lacking:
            raise ValidationError(f"sweep.{axis}: missing {lacking}")
        axes.append(SweepAxis(name=axis, **spec))
    kwargs["axes"] = tuple(axes)
    if "collective_enabled" not in kwargs:
        kwargs["collective_enabled"] = kwargs.get("common_enabled", True)
    return ScenarioConfig(**kwargs)


def _format_value(value: object) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_config(cfg: ScenarioConfig) -> str:
    """Render a ScenarioConfig back to config-file text."""
    lines = []
    if cfg.preset:
        lines.append(f"preset = {cfg.preset}")
    for key in _FLOAT_KEYS:
        lines.append(f"{key} = {_format_value(getattr(cfg, key))}")
    for key in ("common_enabled", "collective_enabled", "dephasing_enabled"):
        lines.append(f"{key} = {_format_value(getattr(cfg, key))}")
    if cfg.ratio_sweep:
        lines.append("ratio_sweep = true")
        lines.append(f"ratio_t_count = {cfg.ratio_t_count}")
    for axis in cfg.axes:
        lines.append(f"sweep.{axis.name}.start = {_format_value(axis.start)}")
        lines.append(f"sweep.{axis.name}.stop = {_format_value(axis.stop)}")
        lines.append(f"sweep.{axis.name}.count = {axis.count}")
    if cfg.output:
        lines.append(f"output = {cfg.output}")
    return "\n".join(lines) + "\n"


# Preset parameter sets. Axis ranges bracket the features each scenario is
# about (entanglement window, current sign change, detuning roots); the
# ranges themselves are engineering choices, not measured quantities.
_PRESETS: dict[str, dict[str, str]] = {
    # equilibrium independent baths (t = t_a = t_b) against a colder/hotter
    # common reservoir, full (t, t_c) map
    "eq_heatmap": {
        "eps_a": "20", "eps_b": "20", "omega": "10",
        "gamma_a": "1", "gamma_b": "1", "gamma_ca": "1", "gamma_cb": "1",
        "t_a": "5", "t_b": "5", "t_c": "1",
        "sweep.t.start": "0.5", "sweep.t.stop": "15", "sweep.t.count": "25",
        "sweep.t_c.start": "0.5", "sweep.t_c.stop": "15", "sweep.t_c.count": "25",
        "output": "eq_heatmap.csv",
    },
    # concurrence vs t for a few fixed common-reservoir temperatures
    "eq_curves": {
        "eps_a": "20", "eps_b": "20", "omega": "10",
        "gamma_a": "1", "gamma_b": "1", "gamma_ca": "1", "gamma_cb": "1",
        "t_a": "5", "t_b": "5", "t_c": "1",
        "sweep.t_c.start": "1", "sweep.t_c.stop": "7", "sweep.t_c.count": "4",
        "sweep.t.start": "0.25", "sweep.t.stop": "15", "sweep.t.count": "60",
        "output": "eq_curves.csv",
    },
    # same sweep with the collective part of the common dissipator switched
    # off; run it once more with collective_enabled = true for the full curve
    "ablation": {
        "eps_a": "20", "eps_b": "20", "omega": "10",
        "gamma_a": "1", "gamma_b": "1", "gamma_ca": "1", "gamma_cb": "1",
        "t_a": "5", "t_b": "5", "t_c": "1",
        "collective_enabled": "false",
        "sweep.t.start": "0.25", "sweep.t.stop": "15", "sweep.t.count": "60",
        "output": "ablation.csv",
    },
    # effective temperatures of both transitions vs detuning, independent
    # baths only
    "teff_scan": {
        "eps_a": "20", "eps_b": "20", "omega": "6",
        "gamma_a": "1", "gamma_b": "1",
        "t_a": "5", "t_b": "8", "t_c": "0",
        "common_enabled": "false", "collective_enabled": "false",
        "sweep.delta_eps.start": "0.05", "sweep.delta_eps.stop": "5",
        "sweep.delta_eps.count": "100",
        "output": "teff_scan.csv",
    },
    # detuned to the common effective temperature (t_a=5, t_b=8), common
    # reservoir temperature swept through it
    "neq_points": {
        "eps_a": "20.475", "eps_b": "19.525", "omega": "6",
        "gamma_a": "1", "gamma_b": "1", "gamma_ca": "1", "gamma_cb": "1",
        "t_a": "5", "t_b": "8", "t_c": "1",
        "sweep.t_c.start": "0.25", "sweep.t_c.stop": "12", "sweep.t_c.count": "60",
        "output": "neq_points.csv",
    },
    # detuning far from the thermalization point, no common effective
    # temperature exists
    "neq_noeff": {
        "eps_a": "21.5", "eps_b": "18.5", "omega": "6",
        "gamma_a": "1", "gamma_b": "1", "gamma_ca": "1", "gamma_cb": "1",
        "t_a": "5", "t_b": "8", "t_c": "1",
        "sweep.t_c.start": "0.25", "sweep.t_c.stop": "12", "sweep.t_c.count": "60",
        "output": "neq_noeff.csv",
    },
    # superconducting-circuit scale, GHz units, with pure dephasing
    "implementation": {
        "eps_a": "1.0", "eps_b": "1.0", "omega": "0.7",
        "gamma_a": "0.01", "gamma_b": "0.01", "gamma_ca": "0.01", "gamma_cb": "0.01",
        "dephasing_gamma": "3.5e-5", "dephasing_enabled": "true",
        "t_a": "0.1", "t_b": "0.1", "t_c": "0.1",
        "sweep.t.start": "0.02", "sweep.t.stop": "1.0", "sweep.t.count": "25",
        "sweep.t_c.start": "0.02", "sweep.t_c.stop": "1.0", "sweep.t_c.count": "25",
        "output": "implementation.csv",
    },
}


def preset_names() -> tuple[str, ...]:
    return tuple(_PRESETS.keys())


def _preset_raw(name: str) -> dict[str, str]:
    if name not in _PRESETS:
        raise ValidationError(
            f"unknown preset {name!r}; available: {', '.join(_PRESETS)}"
        )
    raw = dict(_PRESETS[name])
    raw["preset"] = name
    return raw


def preset_config(name: str) -> ScenarioConfig:
    return _build_config(_preset_raw(name))


def dephasing_rate_from_times(t1: float, t2: float) -> float:
    """Pure-dephasing rate 1/T2 - 1/(2 T1) from relaxation and coherence times."""
    if t1 <= 0.0 or t2 <= 0.0:
        raise ValidationError(f"T1 and T2 must be positive, got {t1}, {t2}")
    gamma = 1.0 / t2 - 0.5 / t1
    if gamma < 0.0:
        raise ValidationError(f"T2 ={t2} exceeds 2*T1 ={2*t1}; rate would be negative")
    return gamma


def _evaluate_point(cfg: ScenarioConfig, values: tuple[float, ...]) -> SweepRow:
    nan = float("nan")
    try:
        params, bath = cfg.at_point(values)
        off = steady_report(
            params,
            dataclasses.replace(bath, common_enabled=False, collective_enabled=False),
        )
        on = steady_report(params, bath) if bath.common_enabled else off
        return SweepRow(
            axis_values=values,
            c_ab=off.concurrence,
            c_abc=on.concurrence,
            delta_c=on.concurrence - off.concurrence,
            q_a=on.q_a, q_b=on.q_b, q_c=on.q_c, q_dep=on.q_dep,
            t_eff_1=on.t_eff_1, t_eff_2=on.t_eff_2,
            residual=max(off.residual, on.residual),
            error="",
        )
    except (ValidationError, SolverError) as exc:
        return SweepRow(
            axis_values=values,
            c_ab=nan, c_abc=nan, delta_c=nan,
            q_a=nan, q_b=nan, q_c=nan, q_dep=nan,
            t_eff_1=nan, t_eff_2=nan, residual=nan,
            error=str(exc),
        )


def run_scenario(cfg: ScenarioConfig, threads: int = 1) -> list[SweepRow]:
    """Solve every grid point of the scenario.

    Rows come back in row-major grid order regardless of threads, so the
    emitted CSV bytes do not depend on parallelism. Solver and validation
    failures at single points are flagged in the row, not raised."""
    points = [tuple(float(v) for v in values) for values in cfg.grid()]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda vals: _evaluate_point(cfg, vals), points))
    return [_evaluate_point(cfg, values) for values in points]


def run_implementation_scenario(cfg: ScenarioConfig, threads: int = 1) -> list[SweepRow]:
    """Same pipeline, for absolute-unit configs; insists dephasing is on,
    since the physical scenario it models always has a finite T2."""
    if not cfg.dephasing_enabled:
        raise ValidationError(
            "implementation scenario requires dephasing_enabled = true"
        )
    return run_scenario(cfg, threads=threads)


def ratio_sweep(
    cfg: ScenarioConfig, threads: int = 1
) -> tuple[list[RatioRow], dict[str, str]]:
    """Best equilibrium vs best non-equilibrium concurrence per coupling.

    Needs exactly one sweep axis, ``omega``. For each coupling the
    temperature grid is T in (0, 2*eps_m] with cfg.ratio_t_count points;
    c_eq maximizes the t_a = t_b = t_c = T diagonal and c_neq maximizes
    strictly below it (t_c < T on the same grid), so ratio > 1 is a real
    enhancement statement. Returns (rows, grid metadata)."""
    if len(cfg.axes) != 1 or cfg.axes[0].name != "omega":
        raise ValidationError("ratio sweep needs exactly one sweep axis: omega")
    if not cfg.common_enabled:
        raise ValidationError("ratio sweep compares against the common reservoir; "
                              "common_enabled must be true")
    eps_m = 0.5 * (cfg.eps_a + cfg.eps_b)
    n = cfg.ratio_t_count
    t_values = np.linspace(2.0 * eps_m / n, 2.0 * eps_m, n)

    def one(omega: float) -> RatioRow:
        params = SystemParams(cfg.eps_a, cfg.eps_b, float(omega))
        bath = cfg.bath_config()
        c_eq = 0.0
        c_neq = 0.0
        for i, t in enumerate(t_values):
            eq = steady_report(
                params, dataclasses.replace(bath, t_a=float(t), t_b=float(t), t_c=float(t))
            )
            c_eq = max(c_eq, eq.concurrence)
            for t_c in t_values[:i]:
                neq = steady_report(
                    params,
                    dataclasses.replace(bath, t_a=float(t), t_b=float(t), t_c=float(t_c)),
                )
                c_neq = max(c_neq, neq.concurrence)
        ratio = c_neq / c_eq if c_eq > 0.0 else float("nan")
        return RatioRow(omega=float(omega), c_eq=c_eq, c_neq=c_neq, ratio=ratio)

    omegas = [float(v) for v in cfg.axes[0].values()]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(one, omegas))
    else:
        rows = [one(w) for w in omegas]
    metadata = {
        "t_grid_start": repr(float(t_values[0])),
        "t_grid_stop": repr(float(t_values[-1])),
        "t_grid_count": str(n),
        "t_c_rule": "t_c < t on the same grid",
    }
    return rows, metadata


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def emit_csv(rows: Sequence[SweepRow], axis_names: Sequence[str], out: TextIO) -> None:
    """Write the sweep CSV: axis columns in declaration order, then the fixed
    observable columns. Floats carry 12 significant digits; identical rows
    give identical bytes."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(list(axis_names) + list(FIXED_COLUMNS))
    for row in rows:
        writer.writerow(
            [_fmt(v) for v in row.axis_values]
            + [
                _fmt(row.c_ab), _fmt(row.c_abc), _fmt(row.delta_c),
                _fmt(row.q_a), _fmt(row.q_b), _fmt(row.q_c), _fmt(row.q_dep),
                _fmt(row.t_eff_1), _fmt(row.t_eff_2), _fmt(row.residual),
                row.error,
            ]
        )


def emit_ratio_csv(
    rows: Sequence[RatioRow], metadata: dict[str, str], out: TextIO
) -> None:
    """Write the ratio CSV (schema omega,c_eq,c_neq,ratio) with the
    maximization grid recorded as leading comment lines."""
    for key, value in metadata.items():
        out.write(f"# {key} = {value}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["omega", "c_eq", "c_neq", "ratio"])
    for row in rows:
        writer.writerow([_fmt(row.omega), _fmt(row.c_eq), _fmt(row.c_neq), _fmt(row.ratio)])


def write_csv_file(path: str, write, *args) -> None:
    """Open path and delegate to one of the emit_* functions."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        write(*args, fh)
