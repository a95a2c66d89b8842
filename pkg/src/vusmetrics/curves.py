"""Threshold-sweep ROC and PR curves and their areas.

The ROC area uses the trapezoidal rule over (FPR, TPR) pairs ordered by
threshold. The PR area defaults to stepwise-interpolated average
precision, which avoids the optimistic bias of linear interpolation in
PR space; the trapezoidal PR variant is kept for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pointwise import confusion, f_beta, fpr, precision, recall
from .series import ScoredSeries, ThresholdGrid, apply_threshold


@dataclass(frozen=True)
class CurvePoint:
    threshold: float
    tpr: float
    fpr: float
    precision: float


def sweep_curve(series: ScoredSeries, grid: ThresholdGrid) -> list[CurvePoint]:
    """Evaluate the confusion rates at every grid threshold.

    Expects a normalized score. Points come back ordered by increasing
    threshold; each threshold is independent, so this could be evaluated
    in parallel and merged in grid order without changing the result.
    """
    points = []
    for th in grid.values:
        c = confusion(series.labels, apply_threshold(series.score, float(th)))
        points.append(
            CurvePoint(
                threshold=float(th),
                tpr=recall(c),
                fpr=fpr(c),
                precision=precision(c),
            )
        )
    return points


def roc_area(fpr_values, tpr_values) -> float:
    """Trapezoidal area of a ROC sweep ordered by increasing threshold."""
    f = np.asarray(fpr_values, dtype=np.float64)
    t = np.asarray(tpr_values, dtype=np.float64)
    return float(0.5 * np.sum((t[1:] + t[:-1]) * (f[:-1] - f[1:])))


def average_precision(recall_values, precision_values) -> float:
    """Stepwise average precision of a sweep ordered by increasing threshold.

    Walks the thresholds from high to low, crediting each new slice of
    recall with the precision at the threshold that attained it. Only
    forward recall progress counts, so the result stays in [0, max recall].
    """
    r = np.asarray(recall_values, dtype=np.float64)
    p = np.asarray(precision_values, dtype=np.float64)
    ap = 0.0
    reached = 0.0
    for k in range(r.size - 1, -1, -1):
        gain = r[k] - reached
        if gain > 0:
            ap += p[k] * gain
            reached = r[k]
    return float(ap)


def pr_area_trapezoid(recall_values, precision_values) -> float:
    """Trapezoidal PR area; not the default, kept for comparison."""
    r = np.asarray(recall_values, dtype=np.float64)
    p = np.asarray(precision_values, dtype=np.float64)
    return float(0.5 * np.sum((p[1:] + p[:-1]) * np.abs(r[1:] - r[:-1])))


def auc_roc(curve: list[CurvePoint]) -> float:
    """Area under the ROC curve of a threshold sweep.

    Degenerate one-class label vectors yield 0 because the corresponding
    rate is pinned to 0 across the sweep.
    """
    return roc_area([c.fpr for c in curve], [c.tpr for c in curve])


def auc_pr(curve: list[CurvePoint], method: str = "step") -> float:
    """Area under the PR curve; ``step`` (default) or ``trapezoid``."""
    rec = [c.tpr for c in curve]
    prec = [c.precision for c in curve]
    if method == "trapezoid":
        return pr_area_trapezoid(rec, prec)
    return average_precision(rec, prec)


def evaluate_point_measures(
    series: ScoredSeries, threshold: float, beta: float = 1.0
) -> dict:
    """Precision/recall/F at one threshold, for the measure bundle."""
    c = confusion(series.labels, apply_threshold(series.score, threshold))
    return {
        "precision": precision(c),
        "recall": recall(c),
        "f": f_beta(c, beta),
    }
