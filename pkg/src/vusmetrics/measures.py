"""One-call evaluation of the full accuracy-measure bundle.

Thirteen measures are produced: precision, recall, f, precision_at_k,
r_precision, r_recall, rf, auc_roc, auc_pr, r_auc_roc, r_auc_pr,
vus_roc and vus_pr. Threshold measures use the 3-sigma rule unless a
threshold is given; the AUC family sweeps an evenly spaced grid.
"""

from __future__ import annotations

import time

import numpy as np

from .curves import auc_pr, auc_roc, sweep_curve
from .errors import UsageError
from .pointwise import confusion, f_beta, precision, precision_at_k, recall
from .range_auc import default_buffer_length, r_auc
from .range_fscore import DEFAULT_CONFIG, r_precision, r_recall, rf_score
from .series import (
    ScoredSeries,
    ThresholdGrid,
    apply_threshold,
    default_threshold,
    extract_ranges,
    normalize_score,
)
from .vus import BufferGrid, vus

MEASURE_NAMES = (
    "precision",
    "recall",
    "f",
    "precision_at_k",
    "r_precision",
    "r_recall",
    "rf",
    "auc_roc",
    "auc_pr",
    "r_auc_roc",
    "r_auc_pr",
    "vus_roc",
    "vus_pr",
)


def evaluate_all(
    score,
    labels,
    *,
    measures=None,
    n_thresholds: int = 250,
    buffer: int | None = None,
    vus_max_buffer: int | None = None,
    impl: str = "opt_mem",
    aggregation: str = "mean",
    values=None,
    threshold: float | None = None,
    k: int | None = None,
) -> dict:
    """Compute a subset (default: all) of the 13 measures.

    ``score`` is min-max normalized internally. ``buffer`` defaults to
    the period estimated from ``values`` when provided, else to the mean
    labeled-anomaly length; the volume sweep spans buffer lengths 0
    through ``vus_max_buffer`` (default twice the buffer).

    Returns {"measures": {...}, "parameters": {...}, "n": ..,
    "anomaly_count": .., "timing": {"impl": .., "seconds": ..}}.
    """
    wanted = tuple(measures) if measures is not None else MEASURE_NAMES
    unknown = [m for m in wanted if m not in MEASURE_NAMES]
    if unknown:
        raise UsageError(f"unknown measures: {', '.join(unknown)}")
    t0 = time.perf_counter()
    series = ScoredSeries(normalize_score(score), labels)
    lab = series.labels
    n = series.length
    n_ones = series.anomaly_count
    if buffer is None:
        buffer = default_buffer_length(lab, values)
    if vus_max_buffer is None:
        vus_max_buffer = 2 * buffer
    grid = ThresholdGrid.uniform(n_thresholds)
    out: dict[str, float] = {}

    if {"precision", "recall", "f", "r_precision", "r_recall", "rf"} & set(wanted):
        thres = default_threshold(series.score) if threshold is None else float(threshold)
        mask = apply_threshold(series.score, thres)
        c = confusion(lab, mask)
        out["precision"] = precision(c)
        out["recall"] = recall(c)
        out["f"] = f_beta(c)
        real_ranges = extract_ranges(lab)
        pred_ranges = extract_ranges(mask.bits)
        out["r_precision"] = r_precision(real_ranges, pred_ranges, DEFAULT_CONFIG)
        out["r_recall"] = r_recall(real_ranges, pred_ranges, DEFAULT_CONFIG)
        out["rf"] = rf_score(real_ranges, pred_ranges, DEFAULT_CONFIG)
    if "precision_at_k" in wanted:
        kk = k if k is not None else max(1, n_ones)
        out["precision_at_k"] = precision_at_k(series.score, lab, kk)
    if {"auc_roc", "auc_pr"} & set(wanted):
        curve = sweep_curve(series, grid)
        out["auc_roc"] = auc_roc(curve)
        out["auc_pr"] = auc_pr(curve)
    if {"r_auc_roc", "r_auc_pr"} & set(wanted):
        roc, pr = r_auc(series, grid, buffer)
        out["r_auc_roc"] = roc
        out["r_auc_pr"] = pr
    if {"vus_roc", "vus_pr"} & set(wanted):
        result = vus(
            series,
            grid,
            BufferGrid.up_to(vus_max_buffer),
            aggregation=aggregation,
            impl=impl,
        )
        out["vus_roc"] = result.vus_roc
        out["vus_pr"] = result.vus_pr

    seconds = time.perf_counter() - t0
    return {
        "n": n,
        "anomaly_count": n_ones,
        "parameters": {
            "N": int(n_thresholds),
            "L": int(vus_max_buffer),
            "buffer": int(buffer),
            "aggregation": aggregation,
        },
        "measures": {name: float(out[name]) for name in wanted if name in out},
        "timing": {"impl": impl, "seconds": seconds},
    }
