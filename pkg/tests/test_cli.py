"""End-to-end tests of the command-line interface."""

import subprocess
import sys

import numpy as np
import pytest

from coolqec.cli import (
    EXIT_CHECK_FAILED,
    EXIT_CONFIG,
    EXIT_DIVERGED,
    EXIT_IO,
    EXIT_OK,
    main,
)
from coolqec.csvio import read_csv


def test_simulate_emits_curve_schema(tmp_path):
    code = main(
        ["simulate", "--gamma=0.05", "--T=0.5", f"--out={tmp_path}",
         "--output=run.csv"]
    )
    assert code == EXIT_OK
    table = read_csv(tmp_path / "run.csv")
    assert table.header == ("t", "fidelity", "baseline")
    assert len(table.rows) == 1000
    t, fid, base = zip(*table.rows)
    assert t[0] == 0.0 and t[-1] == pytest.approx(0.5)
    assert fid[0] == 1.0
    assert all(0.0 <= f <= 1.0 for f in fid)
    assert base[-1] == pytest.approx(0.5 * (1 + np.exp(-2 * 0.05 * 0.5)), abs=1e-8)


def test_simulate_without_noise_renders_constant_fidelity(tmp_path):
    code = main(["simulate", "--gamma=0", "--T=1", f"--out={tmp_path}"])
    assert code == EXIT_OK
    table = read_csv(tmp_path / "curve.csv")
    assert all(row[1] == 1.0 for row in table.rows)


def test_simulate_is_byte_deterministic(tmp_path):
    argv = ["simulate", "--gamma=0.05", "--T=0.5"]
    assert main(argv + [f"--out={tmp_path / 'a'}"]) == EXIT_OK
    assert main(argv + [f"--out={tmp_path / 'b'}"]) == EXIT_OK
    first = (tmp_path / "a" / "curve.csv").read_bytes()
    second = (tmp_path / "b" / "curve.csv").read_bytes()
    assert first == second


def test_sweep_scaling_row_count_matches_grids(tmp_path):
    code = main(
        ["sweep-scaling", "--kappa_list=50", "--s_grid=2.0,2.5", "--T=0.5",
         f"--out={tmp_path}"]
    )
    assert code == EXIT_OK
    table = read_csv(tmp_path / "scaling.csv")
    assert table.header == ("kappa", "s", "lambda", "F_T")
    assert len(table.rows) == 1 * 2
    for kappa, s, lam, fid in table.rows:
        assert kappa == 50.0
        assert lam == pytest.approx(s * kappa)
        assert 0.0 <= fid <= 1.0


def test_sweep_surface_schema(tmp_path):
    code = main(
        ["sweep-surface", "--gamma_grid=0.1", "--kappa_grid=50", "--T=0.5",
         f"--out={tmp_path}"]
    )
    assert code == EXIT_OK
    table = read_csv(tmp_path / "surface.csv")
    assert table.header == ("gamma", "kappa", "F_T")
    assert len(table.rows) == 1


def test_zeno_schema_and_slicing(tmp_path):
    code = main(["zeno", "--cycles_list=8,16", "--T=1.0", f"--out={tmp_path}"])
    assert code == EXIT_OK
    table = read_csv(tmp_path / "zeno.csv")
    assert table.header == ("N", "tau", "survival", "deviation")
    assert [row[0] for row in table.rows] == [8.0, 16.0]
    for n, tau, survival, deviation in table.rows:
        assert tau == pytest.approx(1.0 / n)
        assert 0.0 <= survival <= 1.0
        assert deviation >= 0.0


def test_verify_passes_on_the_shipped_model(capsys):
    code = main(["verify"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert "PASS" in out
    assert "FAIL" not in out


def test_config_file_with_section_and_override(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(
        "command=simulate\n"
        "T=0.5\n"
        "[simulate]\n"
        "gamma=0.3\n",
        encoding="utf-8",
    )
    code = main(
        [f"--config={cfg}", "--gamma=0.0", f"--out={tmp_path}"]
    )
    assert code == EXIT_OK
    table = read_csv(tmp_path / "curve.csv")
    # The override wins over the section value: no noise, flat fidelity.
    assert all(row[1] == 1.0 for row in table.rows)


def test_bad_configuration_exits_2(tmp_path, capsys):
    assert main([]) == EXIT_CONFIG
    assert main(["simulate", "--bogus=1"]) == EXIT_CONFIG
    assert main(["simulate", "--gamma=-1"]) == EXIT_CONFIG
    assert main(["simulate", "oops"]) == EXIT_CONFIG
    capsys.readouterr()


def test_missing_config_file_exits_5(tmp_path):
    assert main([f"--config={tmp_path}/nope.cfg", "simulate"]) == EXIT_IO


def test_unwritable_output_exits_5(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert main(["simulate", "--T=0.5", f"--out={blocker}/sub"]) == EXIT_IO


def test_unstable_step_exits_3(tmp_path):
    code = main(
        ["simulate", "--T=1000", "--step_hint=1.0", f"--out={tmp_path}"]
    )
    assert code == EXIT_DIVERGED


def test_module_invocation_reports_config_error():
    proc = subprocess.run(
        [sys.executable, "-m", "coolqec"], capture_output=True, text=True
    )
    assert proc.returncode == EXIT_CONFIG
    assert "command" in proc.stderr.lower() or "command" in proc.stdout.lower()


def test_exit_code_constants_are_distinct():
    codes = [EXIT_OK, EXIT_CHECK_FAILED, EXIT_CONFIG, EXIT_DIVERGED, EXIT_IO]
    assert codes == [0, 1, 2, 3, 5]
