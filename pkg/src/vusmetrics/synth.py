"""Synthetic labeled series with a plausible imperfect detector score."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UsageError
from .series import ScoredSeries, normalize_score

_PLACEMENT_RETRIES = 200


@dataclass(frozen=True)
class SynthSpec:
    """Parameters of a synthetic instance.

    ``alpha`` anomaly ranges with lengths drawn from a truncated normal
    (mean_len, std_len), placed uniformly at random without overlapping
    or touching, in a series of ``n`` points.
    """

    alpha: int = 10
    mean_len: float = 10.0
    std_len: float = 0.0
    n: int = 100_000
    seed: int = 0

    def __post_init__(self):
        if self.n <= 0:
            raise UsageError("series length must be positive")
        if self.alpha < 0:
            raise UsageError("anomaly count must be non-negative")
        if self.alpha and self.alpha * max(1.0, self.mean_len) >= self.n:
            raise UsageError("anomalies cannot fill the whole series")


def _draw_lengths(rng: np.random.Generator, spec: SynthSpec) -> np.ndarray:
    if spec.std_len == 0:
        lengths = np.full(spec.alpha, max(1, int(round(spec.mean_len))))
    else:
        raw = rng.normal(spec.mean_len, spec.std_len, size=spec.alpha)
        lengths = np.maximum(1, np.rint(raw)).astype(np.int64)
    return lengths.astype(np.int64)


def _place_ranges(rng: np.random.Generator, lengths: np.ndarray, n: int):
    """Uniform non-overlapping placement with a gap of at least one point."""
    placed: list[tuple[int, int]] = []
    for length in sorted(lengths.tolist(), reverse=True):
        ok = False
        for _ in range(_PLACEMENT_RETRIES):
            start = int(rng.integers(0, n - length + 1))
            end = start + length - 1
            # Keep one clear point between ranges so each stays a
            # distinct maximal run.
            if all(end < s - 1 or start > e + 1 for s, e in placed):
                placed.append((start, end))
                ok = True
                break
        if not ok:
            raise UsageError(
                f"could not place {lengths.size} anomalies of total length "
                f"{int(lengths.sum())} in {n} points"
            )
    return sorted(placed)


def generate(spec: SynthSpec) -> ScoredSeries:
    """Deterministic synthetic instance for the given spec.

    The score is the label vector blurred with a short triangular kernel
    plus uniform noise, then normalized: an imperfect detector whose
    score peaks on and near the anomalies.
    """
    rng = np.random.default_rng(spec.seed)
    labels = np.zeros(spec.n, dtype=np.int8)
    if spec.alpha:
        lengths = _draw_lengths(rng, spec)
        for start, end in _place_ranges(rng, lengths, spec.n):
            labels[start : end + 1] = 1
    kernel = np.array([0.25, 0.5, 1.0, 0.5, 0.25])
    smooth = np.convolve(labels.astype(np.float64), kernel, mode="same")
    noise = rng.uniform(0.0, 0.35, size=spec.n)
    return ScoredSeries(normalize_score(smooth + noise), labels)
