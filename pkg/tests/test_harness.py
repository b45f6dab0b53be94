"""Config parsing, sweep execution and CSV emission."""

import io
import math

import numpy as np
import pytest

from commonbath import (
    ScenarioConfig,
    SweepAxis,
    ValidationError,
    dephasing_rate_from_times,
    emit_csv,
    emit_ratio_csv,
    parse_config,
    preset_config,
    preset_names,
    ratio_sweep,
    run_implementation_scenario,
    run_scenario,
)
from commonbath.harness import FIXED_COLUMNS, format_config

BASE = """
eps_a = 20
eps_b = 20
omega = 10
gamma_a = 1
gamma_b = 1
t_a = 5
t_b = 5
"""


def test_parse_config_basics():
    cfg = parse_config(
        """
        # leading comment
        eps_a = 20   # trailing comment
        eps_b = 19
        omega = 6
        gamma_a = 1
        gamma_b = 0.5
        t_a = 5
        t_b = 8
        t_c = 2
        gamma_ca = 0.7
        common_enabled = true
        """
    )
    assert cfg.eps_a == 20.0 and cfg.eps_b == 19.0
    assert cfg.gamma_b == 0.5 and cfg.gamma_ca == 0.7
    assert cfg.common_enabled and cfg.collective_enabled
    assert cfg.axes == ()


def test_parse_config_rejections():
    with pytest.raises(ValidationError, match="duplicate key"):
        parse_config(BASE + "t_a = 6\n")
    with pytest.raises(ValidationError, match="unknown config key"):
        parse_config(BASE + "flux_bias = 3\n")
    with pytest.raises(ValidationError, match="missing required"):
        parse_config("eps_a = 20\n")
    with pytest.raises(ValidationError, match="expected true or false"):
        parse_config(BASE + "common_enabled = yes\n")
    with pytest.raises(ValidationError, match="expected key = value"):
        parse_config(BASE + "just words\n")
    with pytest.raises(ValidationError, match="not a number"):
        parse_config(BASE.replace("omega = 10", "omega = ten"))
    with pytest.raises(ValidationError, match="unknown sweep axis"):
        parse_config(BASE + "sweep.flux.start = 0\n")
    with pytest.raises(ValidationError, match="missing"):
        parse_config(BASE + "sweep.t.start = 1\nsweep.t.stop = 2\n")


def test_collective_follows_common_by_default():
    cfg = parse_config(BASE + "common_enabled = false\n")
    assert not cfg.common_enabled and not cfg.collective_enabled


def test_axis_validation():
    with pytest.raises(ValidationError, match="unknown sweep axis"):
        SweepAxis("flux", 0.0, 1.0, 5)
    with pytest.raises(ValidationError, match="linear"):
        SweepAxis("t", 0.0, 1.0, 5, spacing="log")
    with pytest.raises(ValidationError, match="count"):
        SweepAxis("t", 0.0, 1.0, 0)
    with pytest.raises(ValidationError, match="start"):
        SweepAxis("t", 2.0, 1.0, 5)
    values = SweepAxis("t", 1.0, 3.0, 5).values()
    np.testing.assert_allclose(values, [1.0, 1.5, 2.0, 2.5, 3.0])


def test_scenario_axis_constraints():
    kw = dict(eps_a=20.0, eps_b=20.0, omega=10.0, t_a=5.0, t_b=5.0)
    three = tuple(SweepAxis(n, 1.0, 2.0, 2) for n in ("t", "t_c", "omega"))
    with pytest.raises(ValidationError, match="at most 2"):
        ScenarioConfig(axes=three, **kw)
    with pytest.raises(ValidationError, match="duplicate"):
        ScenarioConfig(axes=(SweepAxis("t", 1.0, 2.0, 2),) * 2, **kw)
    with pytest.raises(ValidationError, match="do not also sweep"):
        ScenarioConfig(
            axes=(SweepAxis("t", 1.0, 2.0, 2), SweepAxis("t_a", 1.0, 2.0, 2)), **kw
        )


def test_at_point_axis_semantics():
    cfg = parse_config(
        BASE
        + "sweep.t.start = 1\nsweep.t.stop = 2\nsweep.t.count = 2\n"
        + "sweep.delta_eps.start = 0\nsweep.delta_eps.stop = 3\nsweep.delta_eps.count = 2\n"
    )
    params, bath = cfg.at_point((1.5, 3.0))
    assert bath.t_a == 1.5 and bath.t_b == 1.5
    assert params.eps_a == 21.5 and params.eps_b == 18.5  # symmetric about eps_m
    assert params.eps_a + params.eps_b == cfg.eps_a + cfg.eps_b
    cfg2 = parse_config(BASE + "sweep.omega.start = 4\nsweep.omega.stop = 8\nsweep.omega.count = 2\n")
    params2, _ = cfg2.at_point((6.0,))
    assert params2.omega == 6.0 and params2.eps_a == 20.0


def test_detuning_axis_keeps_configured_mean():
    asym = BASE.replace("eps_a = 20", "eps_a = 21").replace("eps_b = 20", "eps_b = 18")
    cfg = parse_config(
        asym + "sweep.delta_eps.start = 1\nsweep.delta_eps.stop = 2\nsweep.delta_eps.count = 2\n"
    )
    params, _ = cfg.at_point((1.0,))
    assert params.eps_a == 20.0 and params.eps_b == 19.0  # mean 19.5 +- 0.5


def test_presets_parse_and_roundtrip():
    assert set(preset_names()) >= {
        "eq_heatmap", "eq_curves", "ablation", "teff_scan",
        "neq_points", "neq_noeff", "implementation",
    }
    for name in preset_names():
        cfg = preset_config(name)
        assert parse_config(format_config(cfg)) == cfg
    with pytest.raises(ValidationError, match="unknown preset"):
        preset_config("nonesuch")


def test_preset_overlay_lets_file_override():
    cfg = parse_config("preset = eq_heatmap\nomega = 12\nsweep.t.count = 3\n")
    assert cfg.omega == 12.0
    assert cfg.axes[0].name == "t" and cfg.axes[0].count == 3
    assert cfg.axes[1].name == "t_c" and cfg.axes[1].count == 25


def test_run_scenario_grid_order_and_consistency():
    cfg = parse_config(
        BASE
        + "gamma_ca = 1\ngamma_cb = 1\nt_c = 1\n"
        + "sweep.t.start = 2\nsweep.t.stop = 4\nsweep.t.count = 2\n"
        + "sweep.t_c.start = 1\nsweep.t_c.stop = 3\nsweep.t_c.count = 3\n"
    )
    rows = run_scenario(cfg)
    assert [r.axis_values for r in rows] == [
        (2.0, 1.0), (2.0, 2.0), (2.0, 3.0), (4.0, 1.0), (4.0, 2.0), (4.0, 3.0),
    ]
    for row in rows:
        assert row.error == ""
        assert row.delta_c == row.c_abc - row.c_ab
        assert row.residual <= 1e-10


def test_run_scenario_flags_invalid_points_per_row():
    cfg = parse_config(
        """
        eps_a = 10
        eps_b = 10
        omega = 8
        gamma_a = 1
        gamma_b = 1
        t_a = 5
        t_b = 5
        sweep.delta_eps.start = 6
        sweep.delta_eps.stop = 14
        sweep.delta_eps.count = 3
        """
    )
    rows = run_scenario(cfg)
    # validity requires hypot(delta/2, 8) < 10, i.e. delta < 12
    assert rows[0].error == "" and not math.isnan(rows[0].c_abc)
    assert rows[1].error == "" and not math.isnan(rows[1].c_abc)
    assert rows[2].error != "" and math.isnan(rows[2].c_abc)


def test_run_scenario_thread_count_does_not_change_bytes():
    cfg = parse_config(
        BASE
        + "gamma_ca = 1\ngamma_cb = 1\n"
        + "sweep.t.start = 2\nsweep.t.stop = 6\nsweep.t.count = 5\n"
    )
    outputs = []
    for threads in (1, 3):
        buf = io.StringIO()
        emit_csv(run_scenario(cfg, threads=threads), ["t"], buf)
        outputs.append(buf.getvalue())
    assert outputs[0] == outputs[1]


def test_csv_shape():
    cfg = parse_config(
        BASE + "gamma_ca = 1\ngamma_cb = 1\nt_c = 1\n"
        + "sweep.t.start = 2\nsweep.t.stop = 3\nsweep.t.count = 2\n"
    )
    buf = io.StringIO()
    emit_csv(run_scenario(cfg), ["t"], buf)
    text = buf.getvalue()
    lines = text.splitlines()
    assert lines[0] == "t," + ",".join(FIXED_COLUMNS)
    assert len(lines) == 3
    assert text.endswith("\n") and not text.endswith("\n\n")
    first = lines[1].split(",")
    assert first[0] == "2"
    assert len(first) == 1 + len(FIXED_COLUMNS)
    # 12 significant digits on a nontrivial value
    c_abc = float(first[2])
    assert f"{c_abc:.12g}" == first[2]


def test_ratio_sweep_validation():
    kw = dict(eps_a=20.0, eps_b=20.0, omega=10.0, t_a=5.0, t_b=5.0,
              gamma_ca=1.0, gamma_cb=1.0)
    with pytest.raises(ValidationError, match="omega"):
        ratio_sweep(ScenarioConfig(axes=(SweepAxis("t", 1.0, 2.0, 2),), **kw))
    with pytest.raises(ValidationError, match="omega"):
        ratio_sweep(ScenarioConfig(axes=(), **kw))
    with pytest.raises(ValidationError, match="common_enabled"):
        ratio_sweep(
            ScenarioConfig(
                axes=(SweepAxis("omega", 5.0, 5.0, 1),),
                common_enabled=False, collective_enabled=False,
                **dict(kw, gamma_ca=0.0, gamma_cb=0.0),
            )
        )


def test_ratio_sweep_small_grid():
    cfg = ScenarioConfig(
        eps_a=20.0, eps_b=20.0, omega=10.0, t_a=5.0, t_b=5.0,
        gamma_ca=1.0, gamma_cb=1.0,
        axes=(SweepAxis("omega", 10.0, 10.0, 1),), ratio_t_count=6,
    )
    rows, metadata = ratio_sweep(cfg)
    assert len(rows) == 1
    row = rows[0]
    assert row.omega == 10.0
    assert 0.0 < row.c_eq <= 1.0 and 0.0 < row.c_neq <= 1.0
    assert row.ratio == row.c_neq / row.c_eq
    assert metadata["t_grid_count"] == "6"
    assert float(metadata["t_grid_stop"]) == 40.0  # 2 * eps_m


def test_ratio_csv_layout():
    cfg = ScenarioConfig(
        eps_a=20.0, eps_b=20.0, omega=10.0, t_a=5.0, t_b=5.0,
        gamma_ca=1.0, gamma_cb=1.0,
        axes=(SweepAxis("omega", 10.0, 10.0, 1),), ratio_t_count=4,
    )
    buf = io.StringIO()
    emit_ratio_csv(*ratio_sweep(cfg), buf)
    lines = buf.getvalue().splitlines()
    comments = [ln for ln in lines if ln.startswith("# ")]
    assert any("t_grid_count = 4" in ln for ln in comments)
    header_at = len(comments)
    assert lines[header_at] == "omega,c_eq,c_neq,ratio"
    assert len(lines) == header_at + 2


def test_implementation_scenario_requires_dephasing():
    cfg = parse_config(BASE)
    with pytest.raises(ValidationError, match="dephasing_enabled"):
        run_implementation_scenario(cfg)
    small = parse_config(
        "preset = implementation\n"
        "sweep.t.count = 2\nsweep.t_c.count = 2\n"
    )
    rows = run_implementation_scenario(small)
    assert len(rows) == 4 and all(row.error == "" for row in rows)
    assert all(row.q_dep != 0.0 for row in rows)


def test_dephasing_rate_from_times():
    assert abs(dephasing_rate_from_times(2.0, 1.0) - 0.75) <= 1e-15
    # T2 = 2 T1 is the pure-relaxation limit: no extra dephasing
    assert dephasing_rate_from_times(1.0, 2.0) == 0.0
    with pytest.raises(ValidationError, match="positive"):
        dephasing_rate_from_times(0.0, 1.0)
    with pytest.raises(ValidationError, match="negative"):
        dephasing_rate_from_times(1.0, 3.0)
