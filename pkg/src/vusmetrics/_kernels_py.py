"""Pure-numpy sweep kernels, the fallback when the extension is absent.

Each function mirrors the signature and semantics of its compiled
counterpart in ``_kernels.pyx``; results agree to floating-point noise
(the compiled kernels accumulate sequentially, numpy sums pairwise).
"""

from __future__ import annotations

import numpy as np


def range_sweep(score, thresholds, base, core, seq_starts, seq_ends):
    """Full-length per-threshold sweep at one buffer length.

    Returns (tp, sum_pred, sum_label, existence) arrays, one entry per
    threshold, where sum_label is the mass of the prediction-conditioned
    continuous label and existence the fraction of support segments
    containing a predicted point.
    """
    n = score.size
    nk = thresholds.size
    m = seq_starts.size
    core_b = core.astype(bool)
    tp = np.empty(nk)
    sum_pred = np.empty(nk)
    sum_label = np.empty(nk)
    existence = np.empty(nk)
    for k in range(nk):
        pred = score >= thresholds[k]
        pred_f = pred.astype(np.float64)
        lab_th = np.where(core_b | pred, base, 0.0)
        product = lab_th * pred_f
        tp[k] = product.sum()
        sum_pred[k] = pred_f.sum()
        sum_label[k] = lab_th.sum()
        if m:
            cs = np.concatenate(([0.0], np.cumsum(product)))
            hits = np.count_nonzero(cs[seq_ends + 1] - cs[seq_starts] > 0)
            existence[k] = hits / m
        else:
            existence[k] = 0.0
    return tp, sum_pred, sum_label, existence


def static_sweep(score, thresholds, ones_idx):
    """Per-threshold prediction count and labeled-point hit count."""
    nk = thresholds.size
    sum_pred = np.empty(nk)
    tp0 = np.empty(nk)
    score_ones = score[ones_idx]
    for k in range(nk):
        th = thresholds[k]
        sum_pred[k] = np.count_nonzero(score >= th)
        tp0[k] = np.count_nonzero(score_ones >= th)
    return sum_pred, tp0


def opt_dyn_sweep(score_dyn, thresholds, buf_idx, buf_vals, seq_starts, seq_ends):
    """Dynamic-section sweep: buffer mass and existence per threshold.

    Recomputes the prediction over the dynamic sections at every
    threshold (the memoizing variant reuses stored predictions instead).
    """
    nk = thresholds.size
    m = seq_starts.size
    tp_buf = np.empty(nk)
    existence = np.empty(nk)
    for k in range(nk):
        pred = score_dyn >= thresholds[k]
        tp_buf[k] = float(buf_vals @ pred[buf_idx]) if buf_idx.size else 0.0
        if m:
            cs = np.concatenate(([0], np.cumsum(pred)))
            hits = np.count_nonzero(cs[seq_ends + 1] - cs[seq_starts] > 0)
            existence[k] = hits / m
        else:
            existence[k] = 0.0
    return tp_buf, existence
