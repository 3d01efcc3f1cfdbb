"""Datasets: validated observation vectors, CSV parsing, and the bundled data.

The bundled dataset (tag ``paper``) is the classic reliability benchmark of
50 items put into use at t = 0 with failure times recorded in weeks; it
drives the ``reproduce-paper`` command and the acceptance suite.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = [
    "Dataset",
    "FAILURE_TIMES_WEEKS",
    "EMBEDDED_TAG",
    "embedded_dataset",
    "parse_dataset",
    "read_dataset_file",
]

FAILURE_TIMES_WEEKS: tuple[float, ...] = (
    0.013, 0.065, 0.111, 0.111, 0.163, 0.309, 0.426, 0.535, 0.684, 0.747,
    0.997, 1.284, 1.304, 1.647, 1.829, 2.336, 2.838, 3.269, 3.977, 3.981,
    4.520, 4.789, 4.849, 5.202, 5.291, 5.349, 5.911, 6.018, 6.427, 6.456,
    6.572, 7.023, 7.087, 7.291, 7.787, 8.596, 9.388, 10.261, 10.713, 11.658,
    13.006, 13.388, 13.842, 17.152, 17.283, 19.418, 23.471, 24.777, 32.795, 48.105,
)

EMBEDDED_TAG = "paper"


@dataclass(frozen=True)
class Dataset:
    """Sorted vector of positive, finite observations with a provenance label."""

    values: np.ndarray
    label: str = ""

    def __post_init__(self) -> None:
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1 or vals.size < 1:
            raise ValueError("dataset must be a nonempty one-dimensional sequence")
        if not np.all(np.isfinite(vals)) or np.any(vals <= 0.0):
            raise ValueError("dataset values must be finite and strictly positive")
        object.__setattr__(self, "values", np.sort(vals))

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __len__(self) -> int:
        return self.n


def embedded_dataset(tag: str = EMBEDDED_TAG) -> Dataset:
    """Return a bundled dataset by tag; only ``paper`` is shipped."""
    if tag != EMBEDDED_TAG:
        raise ValueError(f"unknown embedded dataset tag {tag!r}")
    return Dataset(values=np.array(FAILURE_TIMES_WEEKS), label=EMBEDDED_TAG)


def _parse_value(token: str, line_no: int, origin: str) -> float:
    token = token.strip()
    try:
        value = float(token)
    except ValueError:
        raise ValueError(f"{origin}, line {line_no}: not a number: {token!r}") from None
    if not math.isfinite(value):
        raise ValueError(f"{origin}, line {line_no}: value must be finite, got {token!r}")
    if value <= 0.0:
        raise ValueError(f"{origin}, line {line_no}: value must be positive, got {token!r}")
    return value


def parse_dataset(text: str, column: str | None = None, origin: str = "<inline>", label: str = "") -> Dataset:
    """Parse CSV text into a Dataset.

    Without ``column``, each line must carry one numeric value (a single
    non-numeric first line is tolerated as a header).  With ``column``, the
    first line is a header and values are taken from that column.  Lines
    starting with ``#`` are comments (the ``sample`` command emits them), so
    sampler output can be fed straight back in.  Rejects nonpositive,
    non-finite and non-numeric entries with the offending line number.
    """
    raw_rows = list(csv.reader(io.StringIO(text)))
    rows = [
        row if not (row and row[0].lstrip().startswith("#")) else []
        for row in raw_rows
    ]
    values: list[float] = []
    nonempty = [
        (line_no, row)
        for line_no, row in enumerate(rows, start=1)
        if row and any(cell.strip() for cell in row)
    ]
    if column is not None:
        if not nonempty:
            raise ValueError(f"{origin}: empty input")
        header = [h.strip() for h in nonempty[0][1]]
        if column not in header:
            raise ValueError(f"{origin}: no column named {column!r} in header {header}")
        idx = header.index(column)
        for line_no, row in nonempty[1:]:
            if idx >= len(row):
                raise ValueError(f"{origin}, line {line_no}: missing column {column!r}")
            values.append(_parse_value(row[idx], line_no, origin))
    else:
        for pos, (line_no, row) in enumerate(nonempty):
            if len(row) != 1:
                raise ValueError(
                    f"{origin}, line {line_no}: expected one value per line, got {len(row)} fields"
                )
            token = row[0].strip()
            if pos == 0 and not _is_number(token):
                continue  # lone header line
            values.append(_parse_value(token, line_no, origin))
    if not values:
        raise ValueError(f"{origin}: no data values found")
    return Dataset(values=np.array(values), label=label or origin)


def _is_number(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def read_dataset_file(path: str | Path, column: str | None = None) -> Dataset:
    """Read a dataset from a CSV file; see :func:`parse_dataset`."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    return parse_dataset(text, column=column, origin=str(path), label=path.name)
