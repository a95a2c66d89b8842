"""Core domain types: scored series, anomaly ranges, threshold grids, masks.

Scores are min-max normalized to [0, 1] before any thresholded measure so
that a threshold grid with endpoints 0 and 1 is meaningful for every input
scale. A point is predicted anomalous when its normalized score is greater
than or equal to the threshold.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DataError, UsageError


def _as_float_vector(x) -> np.ndarray:
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 1:
        raise UsageError(f"expected a 1-d vector, got shape {arr.shape}")
    return arr


def _as_label_vector(x) -> np.ndarray:
    arr = np.asarray(x)
    if arr.ndim != 1:
        raise UsageError(f"expected a 1-d label vector, got shape {arr.shape}")
    out = arr.astype(np.int8, copy=True)
    if not np.array_equal(out, arr) or not np.all((out == 0) | (out == 1)):
        raise DataError("labels must contain only 0 and 1")
    return out


@dataclass(frozen=True)
class ScoredSeries:
    """An anomaly score paired with ground-truth binary labels.

    Both vectors share the same length and are read-only after
    construction, so instances can be shared freely across workers.
    """

    score: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        score = _as_float_vector(self.score)
        labels = _as_label_vector(self.labels)
        if score.size == 0:
            raise DataError("series must contain at least one point")
        if score.size != labels.size:
            raise UsageError(
                f"score length {score.size} != labels length {labels.size}"
            )
        if not np.all(np.isfinite(score)):
            raise DataError("score contains non-finite values")
        score.flags.writeable = False
        labels.flags.writeable = False
        object.__setattr__(self, "score", score)
        object.__setattr__(self, "labels", labels)

    @property
    def length(self) -> int:
        return int(self.score.size)

    def normalized(self) -> "ScoredSeries":
        """Return a copy whose score is min-max normalized to [0, 1]."""
        return ScoredSeries(normalize_score(self.score), self.labels)

    @property
    def anomaly_count(self) -> int:
        return int(self.labels.sum())


@dataclass(frozen=True, order=True)
class AnomalyRange:
    """A maximal run of label 1s, inclusive on both ends, 0-based."""

    start: int
    end: int

    def __post_init__(self):
        if self.start < 0 or self.end < self.start:
            raise UsageError(f"invalid range ({self.start}, {self.end})")

    def __len__(self) -> int:
        return self.end - self.start + 1


@dataclass(frozen=True)
class ThresholdGrid:
    """A strictly increasing set of thresholds Th_0 < ... < Th_N."""

    values: np.ndarray

    def __post_init__(self):
        values = _as_float_vector(self.values)
        if values.size < 2:
            raise UsageError("a threshold grid needs at least two values")
        if not np.all(np.diff(values) > 0):
            raise UsageError("threshold grid must be strictly increasing")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def count(self) -> int:
        """Number of intervals N; the grid holds N + 1 values."""
        return int(self.values.size - 1)

    @classmethod
    def uniform(cls, n: int = 250) -> "ThresholdGrid":
        """n + 1 evenly spaced thresholds spanning [0, 1]."""
        if n < 1:
            raise UsageError("need at least one interval")
        return cls(np.linspace(0.0, 1.0, n + 1))

    @classmethod
    def from_scores(cls, score) -> "ThresholdGrid":
        """All distinct score values plus the endpoints 0 and 1.

        Used for exactness tests where the sweep must visit every
        attainable prediction mask of a normalized score.
        """
        vals = np.unique(np.concatenate([_as_float_vector(score), [0.0, 1.0]]))
        return cls(vals)


@dataclass(frozen=True)
class PredictionMask:
    """Binary predictions produced by thresholding a normalized score."""

    bits: np.ndarray
    threshold: float = field(default=float("nan"))

    def __post_init__(self):
        bits = _as_label_vector(self.bits)
        bits.flags.writeable = False
        object.__setattr__(self, "bits", bits)


def normalize_score(score) -> np.ndarray:
    """Min-max normalize a score vector into [0, 1].

    A constant score maps to the all-0.5 vector, keeping every threshold
    sweep well defined. Already-normalized non-constant input is a fixed
    point of this map.
    """
    arr = _as_float_vector(score)
    if arr.size == 0:
        raise DataError("cannot normalize an empty score")
    if not np.all(np.isfinite(arr)):
        raise DataError("score contains non-finite values")
    lo = arr.min()
    hi = arr.max()
    if hi == lo:
        return np.full(arr.shape, 0.5)
    return (arr - lo) / (hi - lo)


def extract_ranges(labels) -> list[AnomalyRange]:
    """Maximal runs of consecutive 1s, in index order."""
    lab = _as_label_vector(labels)
    return [AnomalyRange(int(s), int(e)) for s, e in _run_bounds(lab)]


def _run_bounds(binary: np.ndarray) -> np.ndarray:
    """(m, 2) array of inclusive [start, end] bounds of runs of nonzeros."""
    mask = binary != 0
    if not mask.any():
        return np.empty((0, 2), dtype=np.int64)
    padded = np.diff(np.concatenate([[0], mask.view(np.int8), [0]]))
    starts = np.flatnonzero(padded == 1)
    ends = np.flatnonzero(padded == -1) - 1
    return np.stack([starts, ends], axis=1).astype(np.int64)


def ranges_to_labels(ranges: list[AnomalyRange], length: int) -> np.ndarray:
    """Expand ranges back into a binary vector (inverse of extract_ranges)."""
    out = np.zeros(length, dtype=np.int8)
    for r in ranges:
        if r.end >= length:
            raise UsageError(f"range ({r.start}, {r.end}) exceeds length {length}")
        out[r.start : r.end + 1] = 1
    return out


def apply_threshold(score, thres: float) -> PredictionMask:
    """Mark every point with normalized score >= thres as anomalous."""
    arr = _as_float_vector(score)
    return PredictionMask((arr >= thres).astype(np.int8), float(thres))


def default_threshold(score) -> float:
    """Mean plus three population standard deviations, clamped into [0, 1].

    The clamp keeps the rule usable on normalized scores where the 3-sigma
    point routinely exceeds the maximum score.
    """
    arr = _as_float_vector(score)
    if arr.size == 0:
        raise UsageError("score must be non-empty")
    t = float(arr.mean() + 3.0 * arr.std())
    return min(1.0, max(0.0, t))
