"""plot CLI behavior and exit codes."""

import struct

import pytest

from sweepplot.cli import main
from plot_helpers import GRID_CSV, PANEL_CSV, write


def _png_dims(data: bytes) -> tuple[int, int]:
    assert data[:8] == b"\x89PNG\r\n\x1a\n"
    return struct.unpack(">II", data[16:24])


def test_heatmap_render_exit_zero(tmp_path):
    out = tmp_path / "map.png"
    code = main([
        "--kind", "heatmap", "--input", write(tmp_path, GRID_CSV),
        "--output", str(out), "--x", "t", "--y", "t_c", "--z", "delta_c",
        "--diagonal",
    ])
    assert code == 0
    width, height = _png_dims(out.read_bytes())
    assert (width, height) == (704, 528)  # 6.4 x 4.8 inches at 110 dpi


def test_rerender_is_byte_identical(tmp_path):
    csv_path = write(tmp_path, PANEL_CSV)
    args = ["--kind", "dual_panel", "--input", csv_path,
            "--arrows", "--zero-line"]
    first = tmp_path / "a.png"
    second = tmp_path / "b.png"
    assert main(args + ["--output", str(first)]) == 0
    assert main(args + ["--output", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()


def test_bad_binding_exit_one(tmp_path, capsys):
    code = main([
        "--kind", "heatmap", "--input", write(tmp_path, GRID_CSV),
        "--output", str(tmp_path / "x.png"), "--z", "flux",
    ])
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_usage_errors_exit_one(tmp_path, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--kind", "heatmap", "--output", "x.png"])  # no --input
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["--kind", "sparkline", "--input", "a.csv", "--output", "x.png"])
    assert exc.value.code == 1
    capsys.readouterr()


def test_missing_input_exit_three(tmp_path, capsys):
    code = main([
        "--kind", "curves", "--input", str(tmp_path / "absent.csv"),
        "--output", str(tmp_path / "x.png"),
    ])
    assert code == 3
    assert "io error:" in capsys.readouterr().err


def test_unwritable_output_exit_three(tmp_path, capsys):
    code = main([
        "--kind", "curves", "--input", write(tmp_path, PANEL_CSV),
        "--output", str(tmp_path / "nodir" / "x.png"),
    ])
    assert code == 3
    assert "io error:" in capsys.readouterr().err
