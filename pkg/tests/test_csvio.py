"""Unit tests for deterministic CSV emission."""

import numpy as np
import pytest

from coolqec.csvio import CsvTable, format_number, read_csv, write_csv


def test_format_number_is_nine_significant_digits():
    assert format_number(1.0) == "1.00000000e+00"
    assert format_number(0.683939720585721) == "6.83939721e-01"
    assert format_number(-2.5e-13) == "-2.50000000e-13"


def test_table_must_be_rectangular():
    with pytest.raises(ValueError):
        CsvTable(("a", "b"), [(1.0, 2.0), (3.0,)])
    with pytest.raises(ValueError):
        CsvTable((), [])


def test_round_trip_preserves_rendered_values(tmp_path):
    rng = np.random.default_rng(2)
    rows = [tuple(rng.uniform(-1, 1, size=3)) for _ in range(10)]
    path = tmp_path / "table.csv"
    write_csv(CsvTable(("x", "y", "z"), rows), path)
    back = read_csv(path)
    assert back.header == ("x", "y", "z")
    assert len(back.rows) == 10
    for written, reread in zip(rows, back.rows):
        for a, b in zip(written, reread):
            assert abs(a - b) <= 5e-9 * max(1.0, abs(a))


def test_output_bytes_are_stable(tmp_path):
    table = CsvTable(("t", "f"), [(0.0, 1.0), (0.5, 0.25)])
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    write_csv(table, p1)
    write_csv(table, p2)
    data = p1.read_bytes()
    assert data == p2.read_bytes()
    assert b"\r" not in data
    assert data.endswith(b"\n")
    assert data.splitlines()[0] == b"t,f"


def test_read_csv_rejects_empty_file(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("")
    with pytest.raises(ValueError):
        read_csv(path)
