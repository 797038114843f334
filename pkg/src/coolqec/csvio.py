"""Deterministic CSV emission: comma-separated, LF endings, every number in
scientific notation with 9 significant digits."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class CsvTable:
    header: tuple[str, ...]
    rows: list[tuple]

    def __post_init__(self) -> None:
        if not self.header:
            raise ValueError("header must be nonempty")
        width = len(self.header)
        for i, row in enumerate(self.rows):
            if len(row) != width:
                raise ValueError(
                    f"row {i} has {len(row)} fields, header has {width}"
                )


def format_number(x: float) -> str:
    return f"{float(x):.8e}"


def write_csv(table: CsvTable, path) -> None:
    """Write the table byte-deterministically (UTF-8, LF)."""
    lines = [",".join(table.header)]
    for row in table.rows:
        lines.append(",".join(format_number(x) for x in row))
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_csv(path) -> CsvTable:
    """Read back a table written by :func:`write_csv`."""
    with open(path, encoding="utf-8") as fh:
        lines = [line.rstrip("\n") for line in fh if line.strip()]
    if not lines:
        raise ValueError(f"empty CSV file: {path}")
    header = tuple(lines[0].split(","))
    rows = [tuple(float(x) for x in line.split(",")) for line in lines[1:]]
    return CsvTable(header=header, rows=rows)
