"""CSV loading.

Reads the simulator's sweep CSVs: a header row, float cells at full
precision, an optional trailing text column (error messages), and optional
leading ``# key = value`` comment lines (ratio sweeps record their
maximization grid that way). The loader never writes back; inputs are
immutable from the plotter's point of view.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

__all__ = ["Table", "load_table"]


@dataclass(frozen=True)
class Table:
    """One parsed CSV: column order, per-column arrays, comment lines."""

    header: tuple[str, ...]
    columns: dict[str, np.ndarray]
    comments: tuple[str, ...]

    def numeric(self, name: str) -> np.ndarray:
        """The named column as a float array.

        Raises:
            ValidationError: unknown column or a column that does not parse
                as numbers (such as the error-message column).
        """
        if name not in self.columns:
            raise ValidationError(
                f"column {name!r} not in CSV header; have: {', '.join(self.header)}"
            )
        values = self.columns[name]
        if values.dtype.kind != "f":
            raise ValidationError(f"column {name!r} is not numeric")
        return values


def load_table(path: str) -> Table:
    """Parse a CSV file into a Table.

    Lines starting with ``#`` are collected as comments. Each column is
    parsed as floats (empty cells become NaN); columns with non-numeric text
    are kept as strings and rejected only when bound to an axis.

    Raises:
        ValidationError: missing header or no data rows.
        OSError: unreadable path.
    """
    comments: list[str] = []
    body: list[str] = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for line in fh:
            if line.lstrip().startswith("#"):
                comments.append(line.lstrip()[1:].strip())
            else:
                body.append(line)
    reader = csv.reader(body)
    header = next(reader, None)
    if not header:
        raise ValidationError(f"{path}: missing CSV header row")
    rows = [row for row in reader if row]
    if not rows:
        raise ValidationError(f"{path}: no data rows")
    columns: dict[str, np.ndarray] = {}
    for i, name in enumerate(header):
        raw = [row[i] if i < len(row) else "" for row in rows]
        try:
            values = np.array(
                [float(cell) if cell.strip() else float("nan") for cell in raw]
            )
        except ValueError:
            values = np.array(raw, dtype=object)
        columns[name] = values
    return Table(header=tuple(header), columns=columns, comments=tuple(comments))
