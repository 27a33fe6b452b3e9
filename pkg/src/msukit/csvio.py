"""CSV formats: datasets (one column per attribute) and sweep curves."""
from __future__ import annotations

import csv
import io
import math
from typing import Iterable, TextIO

import numpy as np

from .errors import DataError
from .infotheory import Dataset, LabelColumn

CURVE_HEADER = ["x", "mean", "stddev", "trials", "measure", "config_fingerprint"]


def fmt(value: float) -> str:
    """Six significant digits; NaN is written as an empty cell."""
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    return format(float(value), ".6g")


def _encode(name: str, cells: list[str]) -> LabelColumn:
    if cells and all(c.isascii() and c.isdigit() for c in cells):
        values = np.array([int(c) for c in cells], dtype=np.int64)
        return LabelColumn(values, int(values.max()) + 1, name)
    mapping: dict[str, int] = {}
    values = np.array([mapping.setdefault(c, len(mapping)) for c in cells], dtype=np.int64)
    return LabelColumn(values, max(len(mapping), 1), name)


def read_dataset(stream: TextIO, class_column: str | None = "class") -> Dataset:
    """Parse a CSV dataset.

    Columns whose cells are all non-negative integers keep their values;
    any other column is label-encoded by first occurrence. ``class_column``
    marks the class when a column of that name exists.
    """
    reader = csv.reader(stream)
    try:
        header = [h.strip() for h in next(reader)]
    except StopIteration:
        raise DataError("empty CSV: no header row") from None
    if len(set(header)) != len(header):
        raise DataError("duplicate column names in header")
    cells: list[list[str]] = [[] for _ in header]
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise DataError(f"row {lineno}: expected {len(header)} cells, found {len(row)}")
        for j, cell in enumerate(row):
            cells[j].append(cell.strip())
    if not cells[0]:
        raise DataError("CSV has a header but no data rows")
    cols = tuple(_encode(name, c) for name, c in zip(header, cells))
    class_index = header.index(class_column) if class_column in header else None
    return Dataset(cols, class_index)


def write_dataset(ds: Dataset, stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(ds.names)
    writer.writerows(np.stack([c.values for c in ds.columns], axis=1).tolist())


def dataset_to_string(ds: Dataset) -> str:
    buf = io.StringIO()
    write_dataset(ds, buf)
    return buf.getvalue()


def write_curves(results: Iterable, stream: TextIO) -> None:
    """Write SweepResults as rows sorted by (measure, x)."""
    rows = []
    for res in results:
        for p in res.points:
            rows.append((res.measure, p.x, p.mean, p.stddev, p.trials, res.fingerprint))
    rows.sort(key=lambda r: (r[0], r[1]))
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CURVE_HEADER)
    for measure, x, mean, std, trials, fp in rows:
        writer.writerow([x, fmt(mean), fmt(std), trials, measure, fp])


def read_curves(stream: TextIO) -> list[dict]:
    reader = csv.DictReader(stream)
    if reader.fieldnames != CURVE_HEADER:
        raise DataError(f"curve header must be {','.join(CURVE_HEADER)}")
    out = []
    for row in reader:
        out.append({
            "x": int(row["x"]), "mean": float(row["mean"]), "stddev": float(row["stddev"]),
            "trials": int(row["trials"]), "measure": row["measure"],
            "config_fingerprint": row["config_fingerprint"],
        })
    return out


def write_trace(trace, stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["n", "mean", "delta"])
    for n, mean, delta in trace:
        writer.writerow([n, fmt(mean), fmt(delta)])
