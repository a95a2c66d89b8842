"""Buffered continuous labels and the range-aware ROC / PR areas.

Binary labels are relaxed into a continuous vector: every labeled point
keeps value 1, and a transition zone of floor(l/2) points on each side
of a labeled range decays as sqrt(1 - d/l), where d counts points from
the nearest labeled endpoint. Overlapping zones take the pointwise
maximum. Buffer values are kept only at points the current prediction
marks anomalous; elsewhere they are zeroed so the relaxation never
manufactures false negatives.

Recall additionally carries an existence factor, the fraction of
buffered-support ranges touched by at least one predicted point.
Precision carries no existence factor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import UsageError
from .series import (
    PredictionMask,
    ScoredSeries,
    ThresholdGrid,
    _as_label_vector,
    _run_bounds,
    extract_ranges,
)


def buffer_values(labels, buffer: int, bounds: np.ndarray | None = None) -> np.ndarray:
    """Unconditional continuous label vector (as if every point were predicted).

    ``bounds`` may carry precomputed label run bounds to avoid a rescan.
    """
    lab = _as_label_vector(labels)
    if buffer < 0:
        raise UsageError("buffer length must be non-negative")
    vals = lab.astype(np.float64)
    if buffer == 0:
        return vals
    if bounds is None:
        bounds = _run_bounds(lab)
    _apply_decay(vals, bounds, buffer)
    return vals


def _apply_decay(vals: np.ndarray, bounds: np.ndarray, buffer: int) -> None:
    """Write the sqrt(1 - d/buffer) side zones into ``vals`` in place."""
    n = vals.size
    half = buffer // 2
    if half == 0:
        return
    inv = 1.0 / buffer
    for s, e in bounds:
        lo = max(0, s - half)
        if lo < s:
            d = s - np.arange(lo, s)
            np.maximum(vals[lo:s], np.sqrt(1.0 - d * inv), out=vals[lo:s])
        hi = min(n - 1, e + half)
        if hi > e:
            d = np.arange(e + 1, hi + 1) - e
            np.maximum(vals[e + 1 : hi + 1], np.sqrt(1.0 - d * inv), out=vals[e + 1 : hi + 1])


@dataclass(frozen=True)
class ContinuousLabels:
    """Continuous label vector together with the mask it was conditioned on."""

    values: np.ndarray
    buffer: int
    conditioned_on: PredictionMask

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)


def build_continuous_labels(labels, buffer: int, pred: PredictionMask) -> ContinuousLabels:
    """Relax binary labels around each range, gated by the prediction.

    Labeled points stay 1. Buffer points keep their decay value only
    where ``pred`` is 1; with a buffer of 0 the result equals the labels.
    """
    lab = _as_label_vector(labels)
    if lab.size != pred.bits.size:
        raise UsageError("labels and prediction mask must have equal length")
    vals = buffer_values(lab, buffer)
    if buffer > 0:
        suppress = (lab == 0) & (pred.bits == 0)
        vals[suppress] = 0.0
    return ContinuousLabels(values=vals, buffer=buffer, conditioned_on=pred)


@dataclass(frozen=True)
class BufferedConfusion:
    """Real-valued confusion mass computed against a continuous label."""

    tp_l: float
    fp_l: float
    tn_l: float
    fn_l: float
    p_l: float
    n_l: float


def buffered_confusion(cl: ContinuousLabels, labels, pred: PredictionMask) -> BufferedConfusion:
    """Confusion mass of a prediction against the continuous label.

    The positive mass ``p_l`` averages the binary and continuous label
    sums, limiting how much the relaxation can inflate the ground truth.
    """
    lab = _as_label_vector(labels)
    vals = cl.values
    bits = pred.bits.astype(np.float64)
    if vals.size != lab.size or vals.size != bits.size:
        raise UsageError("labels, continuous labels and mask must share length")
    n = float(vals.size)
    tp = float(vals @ bits)
    fp = float((1.0 - vals) @ bits)
    fn = float(vals @ (1.0 - bits))
    tn = float((1.0 - vals) @ (1.0 - bits))
    p_l = 0.5 * (float(lab.sum()) + float(vals.sum()))
    return BufferedConfusion(tp_l=tp, fp_l=fp, tn_l=tn, fn_l=fn, p_l=p_l, n_l=n - p_l)


def range_rates(
    bc: BufferedConfusion,
    support_ranges,
    cl: ContinuousLabels,
    pred: PredictionMask,
) -> tuple[float, float, float]:
    """(recall, fpr, precision) with existence-weighted recall.

    ``support_ranges`` are the ranges of the unconditional buffered-label
    support; a range counts as detected when the prediction is positive
    somewhere inside it. Zero denominators yield 0.
    """
    bits = pred.bits
    detected = 0
    total = len(support_ranges)
    for r in support_ranges:
        if np.any(bits[r.start : r.end + 1] != 0):
            detected += 1
    existence = detected / total if total else 0.0
    tpr = bc.tp_l * existence / bc.p_l if bc.p_l > 0 else 0.0
    fpr = bc.fp_l / bc.n_l if bc.n_l > 0 else 0.0
    denom = bc.tp_l + bc.fp_l
    prec = bc.tp_l / denom if denom > 0 else 0.0
    return tpr, fpr, prec


def rate_arrays(tp, sum_pred, sum_label, existence, n_ones: float, n: int):
    """Vectorized (recall, fpr, precision) from per-threshold sweep sums.

    Shared by every sweep implementation so that all of them perform the
    same floating-point operations on the same quantities.
    """
    tp = np.asarray(tp, dtype=np.float64)
    sum_pred = np.asarray(sum_pred, dtype=np.float64)
    sum_label = np.asarray(sum_label, dtype=np.float64)
    existence = np.asarray(existence, dtype=np.float64)
    p_l = 0.5 * (n_ones + sum_label)
    n_l = n - p_l
    tpr = np.zeros_like(tp)
    np.divide(tp * existence, p_l, out=tpr, where=p_l > 0)
    fpr = np.zeros_like(tp)
    np.divide(sum_pred - tp, n_l, out=fpr, where=n_l > 0)
    prec = np.zeros_like(tp)
    np.divide(tp, sum_pred, out=prec, where=sum_pred > 0)
    return tpr, fpr, prec


def buffered_sweep(score, labels, thresholds: np.ndarray, buffer: int):
    """Per-threshold (recall, fpr, precision) arrays at one buffer length.

    This is the kernel-backed path used by the AUC integrations; it is
    numerically interchangeable with composing build_continuous_labels /
    buffered_confusion / range_rates threshold by threshold.
    """
    lab = _as_label_vector(labels)
    base = buffer_values(lab, buffer)
    support = _run_bounds(base > 0)
    tp, sp, sl, ex = backend.kernels.range_sweep(
        np.ascontiguousarray(score, dtype=np.float64),
        np.ascontiguousarray(thresholds, dtype=np.float64),
        base,
        lab,
        np.ascontiguousarray(support[:, 0]),
        np.ascontiguousarray(support[:, 1]),
    )
    return rate_arrays(tp, sp, sl, ex, float(lab.sum()), lab.size)


def r_auc(series: ScoredSeries, grid: ThresholdGrid | None = None, buffer: int | None = None):
    """(R-AUC-ROC, R-AUC-PR) at one buffer length.

    Expects a normalized score. ``buffer=None`` falls back to the mean
    labeled-anomaly length (use default_buffer_length for the
    period-based estimate when raw series values are available).
    """
    from .curves import average_precision, roc_area

    if grid is None:
        grid = ThresholdGrid.uniform()
    if buffer is None:
        buffer = default_buffer_length(series.labels)
    tpr, fpr, prec = buffered_sweep(series.score, series.labels, grid.values, buffer)
    return roc_area(fpr, tpr), average_precision(tpr, prec)


def r_auc_roc(series: ScoredSeries, grid: ThresholdGrid | None = None, buffer: int | None = None) -> float:
    return r_auc(series, grid, buffer)[0]


def r_auc_pr(series: ScoredSeries, grid: ThresholdGrid | None = None, buffer: int | None = None) -> float:
    return r_auc(series, grid, buffer)[1]


def estimate_period(values) -> int | None:
    """Lag of the first interior local maximum of the autocorrelation.

    Returns None when the series has no usable interior maximum (too
    short, constant, or aperiodic).
    """
    x = np.asarray(values, dtype=np.float64)
    n = x.size
    if n < 8 or not np.all(np.isfinite(x)):
        return None
    x = x - x.mean()
    if not np.any(x):
        return None
    nfft = 1 << int(np.ceil(np.log2(2 * n)))
    spec = np.fft.rfft(x, nfft)
    acf = np.fft.irfft(spec * np.conj(spec))[:n]
    if acf[0] <= 0:
        return None
    acf = acf / acf[0]
    limit = n // 2
    for lag in range(2, limit):
        if acf[lag] > acf[lag - 1] and acf[lag] >= acf[lag + 1] and acf[lag] > 0:
            return lag
    return None


def default_buffer_length(labels, values=None) -> int:
    """Default transition-zone length for a series.

    Prefers the period estimated from the raw series values; falls back
    to the mean labeled-anomaly length, and to 0 for anomaly-free input.
    """
    if values is not None:
        period = estimate_period(values)
        if period:
            return int(period)
    ranges = extract_ranges(labels)
    if not ranges:
        return 0
    return int(round(float(np.mean([len(r) for r in ranges]))))
