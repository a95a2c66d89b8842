"""Execution-time study: one-factor sweeps, medians and regression slopes.

Each sweep varies a single parameter while the others stay at their
defaults (alpha=10, mean_len=10, std_len=0, n=1e5, L=5, N=250), times the
requested implementations over repeated runs on a fixed synthetic
instance, and fits median wall time against the parameter with ordinary
least squares.
"""

from __future__ import annotations

import statistics
import time
from contextlib import contextmanager
from dataclasses import dataclass, field

import numpy as np

from .curves import auc_pr, auc_roc, sweep_curve
from .errors import UsageError
from .range_auc import r_auc
from .series import ScoredSeries, ThresholdGrid
from .synth import SynthSpec, generate
from .vus import BufferGrid, vus_naive, vus_opt, vus_opt_mem

DEFAULTS = {"alpha": 10, "mean_len": 10, "std_len": 0, "n": 100_000, "L": 5, "N": 250}

SWEEP_BOUNDS = {
    "alpha": (0, 2_000),
    "mean_len": (0, 1_000),
    "std_len": (0, 10),
    "n": (1_000, 100_000),
    "L": (0, 1_000),
    "N": (2, 1_000),
}

IMPL_NAMES = ("naive", "opt", "opt_mem", "r_auc", "auc")


@contextmanager
def _single_threaded():
    """Pin BLAS pools to one thread so timings compare algorithmic work."""
    try:
        from threadpoolctl import threadpool_limits

        with threadpool_limits(limits=1):
            yield
    except ImportError:
        yield


def _run_impl(impl: str, series: ScoredSeries, grid: ThresholdGrid, buffers: BufferGrid):
    if impl == "naive":
        return vus_naive(series, grid, buffers)
    if impl == "opt":
        return vus_opt(series, grid, buffers)
    if impl == "opt_mem":
        return vus_opt_mem(series, grid, buffers)
    if impl == "r_auc":
        return r_auc(series, grid, buffers.max_length)
    if impl == "auc":
        curve = sweep_curve(series, grid)
        return auc_roc(curve), auc_pr(curve)
    raise UsageError(f"unknown implementation {impl!r}")


def time_impl(
    impl: str,
    series: ScoredSeries,
    grid: ThresholdGrid,
    buffers: BufferGrid,
    reps: int = 10,
    warmup: int = 1,
) -> list[float]:
    """Wall times (seconds) of ``reps`` single-threaded runs.

    Warm-up runs are discarded so allocator and cache effects do not
    pollute the first sample.
    """
    times = []
    with _single_threaded():
        for _ in range(warmup):
            _run_impl(impl, series, grid, buffers)
        for _ in range(reps):
            t0 = time.perf_counter()
            _run_impl(impl, series, grid, buffers)
            times.append(time.perf_counter() - t0)
    return times


@dataclass
class BenchResult:
    """Raw wall times plus medians and per-impl regression fits."""

    param: str
    values: list[float]
    reps: int
    runs: dict = field(default_factory=dict)  # impl -> [[times per rep] per value]
    medians: dict = field(default_factory=dict)  # impl -> [median per value]
    means: dict = field(default_factory=dict)  # impl -> [mean per value]
    fits: dict = field(default_factory=dict)  # impl -> {slope, intercept, r2, flat}

    def to_dict(self) -> dict:
        return {
            "param": self.param,
            "values": list(self.values),
            "reps": self.reps,
            "runs": self.runs,
            "medians": self.medians,
            "means": self.means,
            "fits": self.fits,
        }


def _instance_for(param: str, value: float, seed: int = 0):
    cfg = dict(DEFAULTS)
    cfg[param] = value
    spec = SynthSpec(
        alpha=int(cfg["alpha"]),
        mean_len=float(cfg["mean_len"]),
        std_len=float(cfg["std_len"]),
        n=int(cfg["n"]),
        seed=seed,
    )
    series = generate(spec)
    grid = ThresholdGrid.uniform(int(cfg["N"]))
    buffers = BufferGrid.up_to(int(cfg["L"]))
    return series, grid, buffers


def run_timing_sweep(
    param: str,
    values,
    impls=IMPL_NAMES,
    reps: int = 10,
    seed: int = 0,
) -> BenchResult:
    """One-factor-at-a-time sweep; all other parameters stay at defaults."""
    if param not in SWEEP_BOUNDS:
        raise UsageError(f"unknown sweep parameter {param!r}")
    lo, hi = SWEEP_BOUNDS[param]
    values = [float(v) for v in values]
    for v in values:
        if not lo <= v <= hi:
            raise UsageError(f"{param}={v} outside declared bounds [{lo}, {hi}]")
    result = BenchResult(param=param, values=values, reps=reps)
    for impl in impls:
        result.runs[impl] = []
    for v in values:
        series, grid, buffers = _instance_for(param, v, seed)
        for impl in impls:
            times = time_impl(impl, series, grid, buffers, reps=reps)
            result.runs[impl].append(times)
    for impl in impls:
        result.medians[impl] = [statistics.median(t) for t in result.runs[impl]]
        result.means[impl] = [statistics.fmean(t) for t in result.runs[impl]]
        result.fits[impl] = fit_slope(values, result.medians[impl])
    return result


def fit_slope(xs, ys) -> dict:
    """Ordinary least squares of y against x with R^2.

    Constant y is reported as slope 0 with ``flat=True`` since R^2 is
    undefined there.
    """
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.size < 3:
        raise UsageError("need at least three sweep points to fit")
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        return {"slope": 0.0, "intercept": float(y.mean()), "r2": 0.0, "flat": True}
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot
    return {"slope": float(slope), "intercept": float(intercept), "r2": r2, "flat": False}


def fit_slopes(result: BenchResult) -> dict:
    """Per-implementation (slope, R^2) of median time vs the swept value."""
    return {impl: fit_slope(result.values, med) for impl, med in result.medians.items()}
