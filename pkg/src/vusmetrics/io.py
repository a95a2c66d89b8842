"""Dataset ingestion and result serialization.

Series files are headerless two-column CSV rows ``value,label`` (a
leading non-numeric row is skipped as a header, for files found in the
wild). Score files hold one float per line; scores shorter than their
series, as produced by subsequence detectors, are right-padded by edge
replication with a warning.
"""

from __future__ import annotations

import json
import math
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DataError
from .series import ScoredSeries

FLOAT_DIGITS = 12


@dataclass
class DatasetRecord:
    """A parsed series file plus any number of named detector scores."""

    series_id: str
    source_path: Path
    values: np.ndarray
    labels: np.ndarray
    scores: dict = field(default_factory=dict)

    @property
    def length(self) -> int:
        return int(self.values.size)

    def scored(self, method: str | None = None) -> ScoredSeries:
        """ScoredSeries for one attached score (or the raw values)."""
        if method is None:
            return ScoredSeries(self.values, self.labels)
        return ScoredSeries(self.scores[method], self.labels)


def load_series(path) -> DatasetRecord:
    """Parse a ``value,label`` CSV into a DatasetRecord."""
    path = Path(path)
    if not path.exists():
        raise DataError(f"{path}: no such file")
    values: list[float] = []
    labels: list[int] = []
    with path.open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 2:
                raise DataError(f"{path}:{lineno}: expected 'value,label', got {line!r}")
            try:
                value = float(parts[0])
                label = float(parts[1])
            except ValueError:
                if lineno == 1:
                    continue  # lenient mode: skip a header row
                raise DataError(f"{path}:{lineno}: non-numeric row {line!r}") from None
            if not math.isfinite(value):
                raise DataError(f"{path}:{lineno}: non-finite value")
            if label not in (0.0, 1.0):
                raise DataError(f"{path}:{lineno}: label must be 0 or 1, got {parts[1]}")
            values.append(value)
            labels.append(int(label))
    if not values:
        raise DataError(f"{path}: empty input")
    return DatasetRecord(
        series_id=path.stem,
        source_path=path,
        values=np.asarray(values, dtype=np.float64),
        labels=np.asarray(labels, dtype=np.int8),
    )


def load_score(path) -> np.ndarray:
    """Parse a one-float-per-line score file."""
    path = Path(path)
    if not path.exists():
        raise DataError(f"{path}: no such file")
    out: list[float] = []
    with path.open("r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                v = float(line)
            except ValueError:
                raise DataError(f"{path}:{lineno}: non-numeric line {line!r}") from None
            if not math.isfinite(v):
                raise DataError(f"{path}:{lineno}: non-finite value")
            out.append(v)
    if not out:
        raise DataError(f"{path}: empty input")
    return np.asarray(out, dtype=np.float64)


def align_score(score: np.ndarray, length: int, name: str = "score") -> np.ndarray:
    """Right-pad a shorter score to the series length by edge replication."""
    if score.size == length:
        return score
    if score.size > length:
        raise DataError(f"{name} has {score.size} points but series has {length}")
    warnings.warn(
        f"{name}: padded from {score.size} to {length} points by edge replication",
        stacklevel=2,
    )
    return np.concatenate([score, np.full(length - score.size, score[-1])])


def _round_floats(obj):
    if isinstance(obj, float):
        if abs(obj) < 1e-12:  # noise around exact zero would defeat stable diffs
            return 0.0
        return float(f"{obj:.{FLOAT_DIGITS}g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def to_json(payload: dict) -> str:
    """Stable JSON: sorted keys, floats at 12 significant digits."""
    return json.dumps(_round_floats(payload), sort_keys=True, indent=2)


def _flatten(prefix: str, obj, rows: list):
    if isinstance(obj, dict):
        for k in sorted(obj):
            _flatten(f"{prefix}.{k}" if prefix else str(k), obj[k], rows)
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            _flatten(f"{prefix}[{i}]", v, rows)
    else:
        rows.append((prefix, obj))


def to_csv(payload: dict) -> str:
    """Flattened two-column ``name,value`` rendering of a payload."""
    rows: list = []
    _flatten("", _round_floats(payload), rows)
    lines = ["name,value"]
    for name, value in rows:
        lines.append(f"{name},{value}")
    return "\n".join(lines) + "\n"


def write_series(path, values: np.ndarray, labels: np.ndarray) -> None:
    """Write a ``value,label`` CSV (inverse of load_series)."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for v, lab in zip(values, labels):
            fh.write(f"{float(v)!r},{int(lab)}\n")


def emit(payload: dict, fmt: str = "json", stream=None) -> None:
    stream = stream if stream is not None else sys.stdout
    if fmt == "json":
        stream.write(to_json(payload) + "\n")
    elif fmt == "csv":
        stream.write(to_csv(payload))
    else:
        raise DataError(f"unknown output format {fmt!r}")
