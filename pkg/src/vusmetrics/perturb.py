"""Perturbation protocols: robustness, separability and rank consistency.

Robustness injects lag, noise or a changed normal/abnormal ratio into a
detector score over a ten-point parameter grid and reports the standard
deviation of each measure across the grid. Separability compares measure
populations of accurate vs inaccurate detectors with a z statistic.
Consistency summarizes how stable a method's rank is across a dataset
via the Shannon entropy of its rank histogram.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import UsageError
from .measures import MEASURE_NAMES, evaluate_all
from .series import ScoredSeries, normalize_score

GRID_SIZE = 10
RATIO_RANGE = (0.01, 0.2)
NOISE_FRACTION = 0.05
LAG_FRACTION = 0.25

# Stand-in for an infinite z statistic (zero variance, distinct means).
Z_SENTINEL = 1e12


@dataclass(frozen=True)
class PerturbationSpec:
    """A perturbation kind with its sampled parameter grid."""

    kind: str
    grid: np.ndarray
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("lag", "noise", "ratio"):
            raise UsageError(f"unknown perturbation kind {self.kind!r}")
        grid = np.asarray(self.grid, dtype=np.float64)
        grid.flags.writeable = False
        object.__setattr__(self, "grid", grid)

    @classmethod
    def lag_default(cls, buffer_length: int, seed: int = 0) -> "PerturbationSpec":
        """Ten lags evenly covering +-25% of the buffer length."""
        bound = LAG_FRACTION * buffer_length
        return cls("lag", np.linspace(-bound, bound, GRID_SIZE), seed)

    @classmethod
    def noise_default(cls, score_range: float = 1.0, seed: int = 0) -> "PerturbationSpec":
        """Ten amplitudes evenly covering +-5% of the score range."""
        bound = NOISE_FRACTION * score_range
        return cls("noise", np.linspace(-bound, bound, GRID_SIZE), seed)

    @classmethod
    def ratio_default(cls, seed: int = 0) -> "PerturbationSpec":
        return cls("ratio", np.linspace(*RATIO_RANGE, GRID_SIZE), seed)


def perturb_lag(score, lag: int) -> np.ndarray:
    """Shift the score by ``lag`` positions, replicating the edge value.

    Replication (rather than wrap-around) avoids teleporting anomaly
    evidence across the series. Labels are untouched by design.
    """
    arr = np.asarray(score, dtype=np.float64)
    n = arr.size
    lag = int(lag)
    if abs(lag) >= n:
        raise UsageError(f"|lag|={abs(lag)} must be smaller than length {n}")
    if lag == 0:
        return arr.copy()
    out = np.empty_like(arr)
    if lag > 0:
        out[:lag] = arr[0]
        out[lag:] = arr[: n - lag]
    else:
        out[lag:] = arr[-1]
        out[:lag] = arr[-lag:]
    return out


def perturb_noise(score, amplitude: float, seed: int = 0) -> np.ndarray:
    """Add per-point uniform noise in [-|amplitude|, +|amplitude|], renormalize."""
    arr = np.asarray(score, dtype=np.float64)
    amp = abs(float(amplitude))
    if amp == 0.0:
        return arr.copy()
    rng = np.random.default_rng(seed)
    return normalize_score(arr + rng.uniform(-amp, amp, size=arr.size))


def perturb_ratio(series: ScoredSeries, target_ratio: float, seed: int = 0) -> ScoredSeries:
    """Raise the anomalous-point density to ``target_ratio`` by dropping
    normal points, farthest from any anomaly first.

    Whole runs of distant normal points disappear together, preserving
    the context nearest to the anomalies. Score and labels are cut in
    lockstep; anomalies are never deleted, so targets below the current
    density (or above what normal-point removal can reach) raise.
    """
    if not 0.0 < target_ratio < 1.0:
        raise UsageError("target_ratio must lie in (0, 1)")
    labels = series.labels
    n = series.length
    n_anom = int(labels.sum())
    if n_anom == 0:
        raise UsageError("series has no anomalies; ratio is fixed at 0")
    keep_normal = int(round(n_anom * (1.0 - target_ratio) / target_ratio))
    n_normal = n - n_anom
    remove = n_normal - keep_normal
    if remove < 0:
        raise UsageError(
            f"target ratio {target_ratio} below current density {n_anom / n:.4f}; "
            "cannot add normal points"
        )
    if remove == 0:
        return ScoredSeries(series.score.copy(), labels.copy())
    # Distance of each point to the nearest anomalous point.
    anom_idx = np.flatnonzero(labels != 0)
    idx = np.arange(n)
    pos = np.searchsorted(anom_idx, idx)
    left = np.where(pos > 0, idx - anom_idx[np.maximum(pos - 1, 0)], np.iinfo(np.int64).max)
    right = np.where(
        pos < anom_idx.size, anom_idx[np.minimum(pos, anom_idx.size - 1)] - idx, np.iinfo(np.int64).max
    )
    dist = np.minimum(left, right)
    normal_idx = np.flatnonzero(labels == 0)
    order = normal_idx[np.lexsort((normal_idx, -dist[normal_idx]))]
    drop = np.zeros(n, dtype=bool)
    drop[order[:remove]] = True
    keep = ~drop
    return ScoredSeries(series.score[keep], labels[keep])


@dataclass
class RobustnessReport:
    """Standard deviations of measures under one perturbation sweep."""

    kind: str
    seed: int
    cells: dict = field(default_factory=dict)  # method -> measure -> std
    series_mean: dict = field(default_factory=dict)  # measure -> mean std

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "seed": self.seed,
            "per_method": self.cells,
            "series_mean": self.series_mean,
        }


def _evaluate_variant(score, labels, measures, eval_kwargs) -> dict:
    res = evaluate_all(score, labels, measures=measures, **eval_kwargs)
    return res["measures"]


def robustness_study(
    series: ScoredSeries,
    scores: dict[str, np.ndarray],
    measures=None,
    specs: list[PerturbationSpec] | None = None,
    **eval_kwargs,
) -> list[RobustnessReport]:
    """Full factorial (method x measure x perturbation grid) sweep.

    For each spec, every method's score is perturbed at each grid value
    and all requested measures recomputed; the per-cell standard
    deviation is taken over the grid. Unreachable ratio targets are
    clamped to the current density (an identity perturbation).
    """
    measures = tuple(measures) if measures is not None else MEASURE_NAMES
    if specs is None:
        specs = [PerturbationSpec.lag_default(10), PerturbationSpec.noise_default()]
    reports = []
    for spec in specs:
        report = RobustnessReport(kind=spec.kind, seed=spec.seed)
        for method, raw in scores.items():
            score = normalize_score(raw)
            values = {name: [] for name in measures}
            for j, g in enumerate(spec.grid):
                if spec.kind == "lag":
                    v_score, v_labels = perturb_lag(score, int(round(g))), series.labels
                elif spec.kind == "noise":
                    v_score = perturb_noise(score, g, seed=spec.seed + j)
                    v_labels = series.labels
                else:
                    density = series.anomaly_count / series.length
                    target = max(float(g), density)
                    sub = perturb_ratio(ScoredSeries(score, series.labels), target, seed=spec.seed + j)
                    v_score, v_labels = sub.score, sub.labels
                got = _evaluate_variant(v_score, v_labels, measures, eval_kwargs)
                for name in measures:
                    values[name].append(got[name])
            report.cells[method] = {
                name: float(np.std(np.asarray(vals))) for name, vals in values.items()
            }
        report.series_mean = {
            name: float(np.mean([report.cells[m][name] for m in report.cells]))
            for name in measures
        }
        reports.append(report)
    return reports


def separability_ztest(accurate_values, inaccurate_values) -> float:
    """z statistic between two measure-value populations.

    Population variances; equal-mean zero-variance pairs give 0, and a
    zero-variance pair with distinct means returns +-Z_SENTINEL.
    """
    a = np.asarray(accurate_values, dtype=np.float64)
    b = np.asarray(inaccurate_values, dtype=np.float64)
    if a.size == 0 or b.size == 0:
        raise UsageError("both populations must be non-empty")
    diff = a.mean() - b.mean()
    var = a.var() / a.size + b.var() / b.size
    if var == 0.0:
        if diff == 0.0:
            return 0.0
        return math.copysign(Z_SENTINEL, diff)
    return float(diff / math.sqrt(var))


def perturbed_population(
    series: ScoredSeries,
    score,
    measures,
    reps: int = 50,
    seed: int = 0,
    buffer_length: int = 10,
    **eval_kwargs,
) -> dict[str, np.ndarray]:
    """``reps`` joint lag+noise perturbations evaluated per measure."""
    rng = np.random.default_rng(seed)
    base = normalize_score(score)
    bound = LAG_FRACTION * buffer_length
    out = {name: [] for name in measures}
    for _ in range(reps):
        lag = int(round(rng.uniform(-bound, bound)))
        amp = rng.uniform(0.0, NOISE_FRACTION)
        v = perturb_lag(base, lag)
        v = perturb_noise(v, amp, seed=int(rng.integers(0, 2**31 - 1)))
        got = _evaluate_variant(v, series.labels, tuple(measures), eval_kwargs)
        for name in measures:
            out[name].append(got[name])
    return {name: np.asarray(vals) for name, vals in out.items()}


def rank_entropy(ranks) -> float:
    """Shannon entropy (bits) of the empirical rank histogram."""
    arr = np.asarray(ranks)
    if arr.size == 0:
        raise UsageError("need at least one rank")
    if np.any(arr < 1):
        raise UsageError("ranks are 1-based positive integers")
    _, counts = np.unique(arr, return_counts=True)
    p = counts / counts.sum()
    return float(-(p * np.log2(p)).sum())
