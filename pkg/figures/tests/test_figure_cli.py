"""Command-line behavior of the figure renderer."""

import subprocess
import sys

import numpy as np
import pytest

from figplots.cli import main


def _write_csv(path, header, rows):
    lines = [header]
    lines.extend(",".join(f"{v:.8e}" for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


@pytest.fixture
def scaling_csv(tmp_path):
    rows = []
    for kappa in (25.0, 100.0):
        for s in (1.0, 2.0, 2.5, 3.0, 4.0):
            f = 0.9 + 0.05 * (kappa / 100.0) - 0.01 * (s - 2.5) ** 2
            rows.append((kappa, s, kappa * s, f))
    return _write_csv(tmp_path / "scaling.csv", "kappa,s,lambda,F_T", rows)


@pytest.fixture
def curve_csvs(tmp_path):
    t = np.linspace(0.0, 10.0, 30)
    baseline = 0.5 * (1.0 + np.exp(-0.1 * t))
    paths = []
    for i, kappa in enumerate((25, 100)):
        rows = list(zip(t, np.minimum(1.0, baseline + 0.02 * (i + 1)), baseline))
        paths.append(_write_csv(tmp_path / f"curve_k{kappa}.csv", "t,fidelity,baseline", rows))
    return paths


def test_scaling_command_writes_pair_and_prints_optima(scaling_csv, tmp_path, capsys):
    out = tmp_path / "fig" / "scaling.png"
    out.parent.mkdir()
    assert main(["scaling", "--in", str(scaling_csv), "--out", str(out)]) == 0
    captured = capsys.readouterr()
    assert "kappa=25 optimum s=2.5" in captured.out
    assert "kappa=100 optimum s=2.5" in captured.out
    assert out.exists() and out.with_suffix(".svg").exists()


def test_curves_command_accepts_many_inputs(curve_csvs, tmp_path):
    out = tmp_path / "curves"
    argv = ["curves", "--in", *map(str, curve_csvs), "--out", str(out)]
    assert main(argv) == 0
    assert (tmp_path / "curves.png").exists() and (tmp_path / "curves.svg").exists()


def test_transient_command_renders(curve_csvs, tmp_path):
    argv = ["transient", "--in", *map(str, curve_csvs), "--out", str(tmp_path / "tr.svg")]
    assert main(argv) == 0
    assert (tmp_path / "tr.png").exists()


def test_surface_command_renders_single_cell(tmp_path):
    csv = _write_csv(tmp_path / "surface.csv", "gamma,kappa,F_T", [(0.1, 100.0, 0.9)])
    assert main(["surface", "--in", str(csv), "--out", str(tmp_path / "s")]) == 0
    assert (tmp_path / "s.png").exists()


def test_scaling_rejects_multiple_inputs(scaling_csv, tmp_path):
    argv = [
        "scaling",
        "--in", str(scaling_csv), str(scaling_csv),
        "--out", str(tmp_path / "x.png"),
    ]
    with pytest.raises(SystemExit) as excinfo:
        main(argv)
    assert excinfo.value.code == 2


def test_unknown_figure_id_is_usage_error(tmp_path):
    with pytest.raises(SystemExit) as excinfo:
        main(["histogram", "--in", "x.csv", "--out", str(tmp_path / "x.png")])
    assert excinfo.value.code == 2


def test_missing_inputs_flag_is_usage_error(tmp_path):
    with pytest.raises(SystemExit) as excinfo:
        main(["scaling", "--out", str(tmp_path / "x.png")])
    assert excinfo.value.code == 2


def test_bad_data_exits_one_with_message(tmp_path, capsys):
    empty = tmp_path / "empty.csv"
    empty.write_text("", encoding="utf-8")
    rc = main(["scaling", "--in", str(empty), "--out", str(tmp_path / "x.png")])
    assert rc == 1
    assert "error:" in capsys.readouterr().err


def test_unwritable_output_exits_one(scaling_csv, tmp_path, capsys):
    out = tmp_path / "no_such_dir" / "x.png"
    rc = main(["scaling", "--in", str(scaling_csv), "--out", str(out)])
    assert rc == 1
    assert "error:" in capsys.readouterr().err


def test_module_entry_point_runs(scaling_csv, tmp_path):
    out = tmp_path / "mod.png"
    proc = subprocess.run(
        [sys.executable, "-m", "figplots", "scaling", "--in", str(scaling_csv),
         "--out", str(out)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert out.exists()
