"""Load one numeric column from a delimited text file."""
from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .curves import Sample
from .distributions import as_generator

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class IngestSpec:
    """Where and how to read a sample.

    ``column`` is a header name or a 0-based index.  ``has_header=None``
    detects a header by whether the first row's target cell is numeric.
    ``min_value`` drops rows below it and is applied before the log.
    """

    path: str | Path
    column: str | int = 0
    delimiter: str = ","
    has_header: bool | None = None
    min_value: float | None = None
    log_transform: bool = False


@dataclass(frozen=True)
class IngestReport:
    values: np.ndarray
    total_rows: int
    dropped_nonnumeric: int
    dropped_below_min: int


def _to_float(cell: str) -> float | None:
    try:
        v = float(cell.strip())
    except ValueError:
        return None
    return v if math.isfinite(v) else None


def _column_index(header: list[str] | None, column) -> int:
    if isinstance(column, int):
        return column
    if isinstance(column, str) and column.lstrip("-").isdigit():
        return int(column)
    if header is None:
        raise ValueError(f"column {column!r} given by name but file has no header")
    names = [h.strip() for h in header]
    if column not in names:
        raise ValueError(f"column {column!r} not found; header has {names}")
    return names.index(column)


def read_column(spec: IngestSpec) -> IngestReport:
    path = Path(spec.path)
    try:
        with path.open(newline="", encoding="utf-8-sig") as fh:
            rows = [r for r in csv.reader(fh, delimiter=spec.delimiter) if any(c.strip() for c in r)]
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror or exc}") from exc
    if not rows:
        raise ValueError(f"{path}: no rows")

    has_header = spec.has_header
    if has_header is None:
        probe = rows[0]
        try:
            idx = _column_index(probe, spec.column)
            has_header = idx >= len(probe) or _to_float(probe[idx]) is None
        except ValueError:
            has_header = True
    header = rows[0] if has_header else None
    body = rows[1:] if has_header else rows
    idx = _column_index(header, spec.column)

    kept, bad, below = [], 0, 0
    for r in body:
        v = _to_float(r[idx]) if idx < len(r) else None
        if v is None:
            bad += 1
            continue
        if spec.min_value is not None and v < spec.min_value:
            below += 1
            continue
        kept.append(v)
    if bad:
        log.warning("%s: dropped %d non-numeric row(s)", path, bad)
    if not kept:
        raise ValueError(f"{path}: no numeric rows retained")
    values = np.array(kept)
    if spec.log_transform:
        nonpos = int(np.count_nonzero(values <= 0))
        if nonpos:
            raise ValueError(f"{path}: log transform needs positive values; {nonpos} row(s) are <= 0")
        values = np.log(values)
    return IngestReport(values, len(body), bad, below)


def load_sample(spec: IngestSpec) -> Sample:
    return Sample(read_column(spec).values)


def subsample(s: Sample, n: int, stream) -> Sample:
    """Simple random sample of size ``n`` without replacement."""
    if not 1 <= n <= len(s):
        raise ValueError(f"subsample size {n} outside [1, {len(s)}]")
    rng = as_generator(stream)
    return Sample(rng.choice(s.values, size=n, replace=False))
