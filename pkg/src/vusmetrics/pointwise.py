"""Point-based threshold measures: confusion counts, P/R/FPR, F-beta, P@k.

Degenerate denominators return 0 instead of raising so that threshold
sweeps past the score maximum never abort.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UsageError
from .series import PredictionMask, _as_float_vector, _as_label_vector


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


def confusion(labels, pred) -> ConfusionCounts:
    """Count tp/fp/tn/fn between binary labels and a prediction mask."""
    lab = _as_label_vector(labels)
    bits = pred.bits if isinstance(pred, PredictionMask) else _as_label_vector(pred)
    if lab.size != bits.size:
        raise UsageError(f"labels length {lab.size} != pred length {bits.size}")
    lab_b = lab.astype(bool)
    pred_b = bits.astype(bool)
    tp = int(np.count_nonzero(lab_b & pred_b))
    fp = int(np.count_nonzero(~lab_b & pred_b))
    fn = int(np.count_nonzero(lab_b & ~pred_b))
    tn = lab.size - tp - fp - fn
    return ConfusionCounts(tp=tp, fp=fp, tn=tn, fn=fn)


def precision(c: ConfusionCounts) -> float:
    denom = c.tp + c.fp
    return c.tp / denom if denom else 0.0


def recall(c: ConfusionCounts) -> float:
    denom = c.tp + c.fn
    return c.tp / denom if denom else 0.0


def fpr(c: ConfusionCounts) -> float:
    denom = c.fp + c.tn
    return c.fp / denom if denom else 0.0


def f_beta(c: ConfusionCounts, beta: float = 1.0) -> float:
    """Weighted harmonic mean of precision and recall."""
    if beta <= 0:
        raise UsageError("beta must be positive")
    p = precision(c)
    r = recall(c)
    denom = beta * beta * p + r
    if denom == 0:
        return 0.0
    return (1.0 + beta * beta) * p * r / denom


def precision_at_k(score, labels, k: int) -> float:
    """Fraction of the k highest-scoring points that are labeled anomalous.

    Ties at the k-th score value are broken by lower index first, so the
    result is deterministic.
    """
    s = _as_float_vector(score)
    lab = _as_label_vector(labels)
    if s.size != lab.size:
        raise UsageError("score and labels must have equal length")
    if not 1 <= k <= s.size:
        raise UsageError(f"k={k} out of range [1, {s.size}]")
    order = np.lexsort((np.arange(s.size), -s))
    top = order[:k]
    return float(lab[top].sum()) / k
